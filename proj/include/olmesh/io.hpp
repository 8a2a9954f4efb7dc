#pragma once

// JSON and CSV interchange formats.
//
//   ComplexMatrix  {"rows": R, "cols": C, "data": [[re, im], ...]}  row-major
//   StateVector    {"dim": N, "data": [[re, im], ...]}
//   Hamiltonian    ComplexMatrix plus {"label": text}
//   GivensCircuit  {"dim", "global_phase", "diagonal", "gates": [{"n","theta","phi","layer"}]}
//   PulseSchedule  {"dim", "global_phase", "ops": [{"op": "dimerize"|"global_x"|"local_z", ...}]}
//   HvhPlan        {"L", "L_buffer", "stage1", "stage2", "stage3"}
//   GridTargets    {"L", "moves": [[rS, cS, rT, cT], ...]}
//   PowerLawFit    {"C", "k", "b", "residual"}
//   SweepResult    CSV label,N,sigma,epsilon,mean_infidelity,std_infidelity,n_states,n_noise

#include <charconv>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "olmesh/clements.hpp"
#include "olmesh/errors.hpp"
#include "olmesh/native_gates.hpp"
#include "olmesh/noise.hpp"
#include "olmesh/numerics.hpp"
#include "olmesh/rearrange.hpp"
#include "olmesh/sim.hpp"
#include "olmesh/targets.hpp"

namespace olmesh::io {

using nlohmann::json;

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": field \"" + key + "\" has wrong type: " + e.what());
    }
}

inline json complex_array(const Complex* begin, std::size_t count) {
    json data = json::array();
    for (std::size_t i = 0; i < count; ++i) data.push_back({begin[i].real(), begin[i].imag()});
    return data;
}

inline std::vector<Complex> read_complex_array(const json& j, std::size_t expected, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + ": \"data\" must be an array");
    if (j.size() != expected) {
        throw FormatError(std::string(what) + ": \"data\" has " + std::to_string(j.size()) + " entries, expected " +
                          std::to_string(expected));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw FormatError(std::string(what) + ": entries must be [re, im] number pairs");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

}  // namespace detail

/// Parses JSON text; FormatError messages carry line and byte position.
inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("JSON parse error at line " + std::to_string(detail::line_of(text, e.byte)) + ", byte " +
                          std::to_string(e.byte) + ": " + e.what());
    }
}

inline std::string read_text(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return read_text(in);
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- ComplexMatrix -----------------------------------------------------------

inline json to_json(const ComplexMatrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", detail::complex_array(m.data(), static_cast<std::size_t>(m.size()))}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    const auto rows = detail::field<long long>(j, "rows", "ComplexMatrix");
    const auto cols = detail::field<long long>(j, "cols", "ComplexMatrix");
    if (rows <= 0 || cols <= 0) throw FormatError("ComplexMatrix: rows and cols must be positive");
    const auto data = detail::read_complex_array(j.at("data"), static_cast<std::size_t>(rows * cols), "ComplexMatrix");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < data.size(); ++i) m.data()[i] = data[i];
    if (!all_finite(m)) throw FormatError("ComplexMatrix: non-finite entry");
    return m;
}

// --- StateVector -------------------------------------------------------------

inline json to_json(const StateVector& s) {
    return {{"dim", s.dim()}, {"data", detail::complex_array(s.amplitudes().data(), s.dim())}};
}

inline StateVector state_from_json(const json& j) {
    const auto dim = detail::field<long long>(j, "dim", "StateVector");
    if (dim <= 0) throw FormatError("StateVector: dim must be positive");
    const auto data = detail::read_complex_array(j.at("data"), static_cast<std::size_t>(dim), "StateVector");
    ComplexVector v(dim);
    for (std::size_t i = 0; i < data.size(); ++i) v(static_cast<Eigen::Index>(i)) = data[i];
    return StateVector(std::move(v));
}

// --- Hamiltonian -------------------------------------------------------------

inline json to_json(const Hamiltonian& h) {
    json j = to_json(h.matrix);
    j["label"] = h.label;
    return j;
}

/// Throws FormatError on malformed input and SymmetryError if not Hermitian.
inline Hamiltonian hamiltonian_from_json(const json& j) {
    std::string label;
    if (j.is_object() && j.contains("label")) label = detail::field<std::string>(j, "label", "Hamiltonian");
    ComplexMatrix m = matrix_from_json(j);
    if (m.rows() != m.cols()) throw FormatError("Hamiltonian: matrix must be square");
    return Hamiltonian::from_matrix(std::move(m), std::move(label));
}

inline Hamiltonian load_hamiltonian(std::istream& in) { return hamiltonian_from_json(parse_json(read_text(in))); }
inline Hamiltonian load_hamiltonian(const std::string& path) { return hamiltonian_from_json(parse_json(read_file(path))); }

// --- GivensCircuit -----------------------------------------------------------

inline json to_json(const GivensCircuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) gates.push_back({{"n", g.mode_low}, {"theta", g.theta}, {"phi", g.phi}, {"layer", g.layer}});
    return {{"dim", c.dim}, {"global_phase", c.global_phase}, {"diagonal", c.diagonal_phases}, {"gates", gates}};
}

inline GivensCircuit circuit_from_json(const json& j) {
    GivensCircuit c;
    const auto dim = detail::field<long long>(j, "dim", "GivensCircuit");
    if (dim <= 0) throw FormatError("GivensCircuit: dim must be positive");
    c.dim = static_cast<std::size_t>(dim);
    c.global_phase = detail::field<double>(j, "global_phase", "GivensCircuit");
    c.diagonal_phases = detail::field<std::vector<double>>(j, "diagonal", "GivensCircuit");
    if (c.diagonal_phases.size() != c.dim) throw FormatError("GivensCircuit: diagonal length must equal dim");
    const auto& gates = j.at("gates");
    if (!gates.is_array()) throw FormatError("GivensCircuit: \"gates\" must be an array");
    for (const auto& g : gates) {
        GivensGate gate;
        const auto n = detail::field<long long>(g, "n", "GivensGate");
        const auto layer = g.contains("layer") ? detail::field<long long>(g, "layer", "GivensGate") : 0;
        if (n < 0 || layer < 0) throw FormatError("GivensGate: n and layer must be non-negative");
        gate.mode_low = static_cast<std::size_t>(n);
        gate.theta = detail::field<double>(g, "theta", "GivensGate");
        gate.phi = detail::field<double>(g, "phi", "GivensGate");
        gate.layer = static_cast<std::size_t>(layer);
        c.gates.push_back(gate);
    }
    return c;
}

// --- PulseSchedule -----------------------------------------------------------

inline json to_json(const PulseSchedule& s) {
    json ops = json::array();
    for (const auto& op : s.ops) {
        if (const auto* d = std::get_if<Dimerize>(&op)) {
            ops.push_back({{"op", "dimerize"}, {"parity", to_string(d->parity)}});
        } else if (const auto* x = std::get_if<GlobalX>(&op)) {
            ops.push_back({{"op", "global_x"}, {"angle", x->angle}});
        } else {
            ops.push_back({{"op", "local_z"}, {"phases", std::get<LocalZ>(op).phases}});
        }
    }
    return {{"dim", s.dim}, {"global_phase", s.global_phase}, {"ops", ops}};
}

inline PulseSchedule schedule_from_json(const json& j) {
    PulseSchedule s;
    const auto dim = detail::field<long long>(j, "dim", "PulseSchedule");
    if (dim <= 0) throw FormatError("PulseSchedule: dim must be positive");
    s.dim = static_cast<std::size_t>(dim);
    s.global_phase = detail::field<double>(j, "global_phase", "PulseSchedule");
    const auto& ops = j.at("ops");
    if (!ops.is_array()) throw FormatError("PulseSchedule: \"ops\" must be an array");
    for (const auto& op : ops) {
        const auto kind = detail::field<std::string>(op, "op", "PulseSchedule op");
        if (kind == "dimerize") {
            const auto parity = detail::field<std::string>(op, "parity", "dimerize");
            if (parity != "even" && parity != "odd") throw FormatError("dimerize: parity must be \"even\" or \"odd\"");
            s.ops.emplace_back(Dimerize{parity == "even" ? Parity::Even : Parity::Odd});
        } else if (kind == "global_x") {
            s.ops.emplace_back(GlobalX{detail::field<double>(op, "angle", "global_x")});
        } else if (kind == "local_z") {
            s.ops.emplace_back(LocalZ{detail::field<std::vector<double>>(op, "phases", "local_z")});
        } else {
            throw FormatError("PulseSchedule: unknown op \"" + kind + "\"");
        }
    }
    return s;
}

// --- Rearrangement -----------------------------------------------------------

inline json to_json(const HvhPlan& p) {
    auto maps = [](const std::vector<Permutation>& v) {
        json a = json::array();
        for (const auto& perm : v) a.push_back(perm.map);
        return a;
    };
    return {{"L", p.l}, {"L_buffer", p.l_buffer}, {"stage1", maps(p.stage1)}, {"stage2", maps(p.stage2)}, {"stage3", maps(p.stage3)}};
}

inline HvhPlan plan_from_json(const json& j) {
    HvhPlan p;
    p.l = detail::field<std::size_t>(j, "L", "HvhPlan");
    p.l_buffer = detail::field<std::size_t>(j, "L_buffer", "HvhPlan");
    p.l_ext = p.l + p.l_buffer;
    auto maps = [&](const char* key) {
        std::vector<Permutation> v;
        for (auto& m : detail::field<std::vector<std::vector<std::size_t>>>(j, key, "HvhPlan")) v.push_back({std::move(m)});
        return v;
    };
    p.stage1 = maps("stage1");
    p.stage2 = maps("stage2");
    p.stage3 = maps("stage3");
    return p;
}

inline json to_json(const GridTargets& t) {
    json moves = json::array();
    for (const auto& m : t.moves) moves.push_back({m.source.row, m.source.col, m.target.row, m.target.col});
    return {{"L", t.l}, {"moves", moves}};
}

inline GridTargets targets_from_json(const json& j) {
    GridTargets t;
    t.l = detail::field<std::size_t>(j, "L", "GridTargets");
    for (const auto& m : detail::field<std::vector<std::vector<std::size_t>>>(j, "moves", "GridTargets")) {
        if (m.size() != 4) throw FormatError("GridTargets: each move must be [rS, cS, rT, cT]");
        t.moves.push_back({{m[0], m[1]}, {m[2], m[3]}});
    }
    return t;
}

// --- Noise -------------------------------------------------------------------

inline json to_json(const PowerLawFit& f) {
    return {{"C", f.c}, {"k", f.k}, {"b", f.b}, {"residual", f.residual}};
}

inline json to_json(const ProbabilityTrace& trace) { return json(trace); }

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("CSV line " + std::to_string(line) + ": cannot parse number \"" + s + "\"");
    }
    return v;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline constexpr const char* kSweepHeader = "label,N,sigma,epsilon,mean_infidelity,std_infidelity,n_states,n_noise";

inline std::string sweep_to_csv(const SweepResult& rows, InfidelityMetric metric = InfidelityMetric::Overlap) {
    std::string out = std::string(kSweepHeader) + "\n";
    for (const auto& r : rows) {
        out += r.label + "," + std::to_string(r.n) + "," + detail::format_double(r.sigma) + "," +
               detail::format_double(r.epsilon) + "," + detail::format_double(r.stats.mean_for(metric)) + "," +
               detail::format_double(r.stats.std_for(metric)) + "," + std::to_string(r.stats.n_states) + "," +
               std::to_string(r.stats.n_noise) + "\n";
    }
    return out;
}

/// Reads a sweep CSV; the metric columns land in stats.mean / stats.std.
inline SweepResult sweep_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw FormatError("CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw FormatError("CSV line 1: unexpected header \"" + line + "\"");
    SweepResult rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != 8) throw FormatError("CSV line " + std::to_string(line_no) + ": expected 8 fields");
        SweepRow r;
        r.label = cells[0];
        r.n = static_cast<std::size_t>(detail::parse_double(cells[1], line_no));
        r.sigma = detail::parse_double(cells[2], line_no);
        r.epsilon = detail::parse_double(cells[3], line_no);
        r.stats.mean = detail::parse_double(cells[4], line_no);
        r.stats.std = detail::parse_double(cells[5], line_no);
        r.stats.mean_per_mode = r.n > 0 ? r.stats.mean / static_cast<double>(r.n) : 0.0;
        r.stats.std_per_mode = r.n > 0 ? r.stats.std / static_cast<double>(r.n) : 0.0;
        r.stats.n_states = static_cast<std::size_t>(detail::parse_double(cells[6], line_no));
        r.stats.n_noise = static_cast<std::size_t>(detail::parse_double(cells[7], line_no));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string buffer_stats_to_csv(const BufferStats& s) {
    std::string out = "L,samples,mean,std\n";
    out += std::to_string(s.l) + "," + std::to_string(s.samples) + "," + detail::format_double(s.mean) + "," +
           detail::format_double(s.std) + "\n";
    out += "L,l_buffer,count\n";
    for (std::size_t b = 0; b < s.histogram.size(); ++b) {
        out += std::to_string(s.l) + "," + std::to_string(b) + "," + std::to_string(s.histogram[b]) + "\n";
    }
    return out;
}

}  // namespace olmesh::io
