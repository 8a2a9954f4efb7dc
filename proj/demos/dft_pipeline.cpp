// Compiles the centered DFT for a few sizes, checks the lowered schedule
// against the target and prints a noisy infidelity estimate.

#include <cstdio>

#include "olmesh/olmesh.hpp"

int main() {
    using namespace olmesh;
    for (std::size_t n : {4, 8, 13, 20}) {
        const ComplexMatrix u = dft_matrix(n, /*shifted=*/true);
        const GivensCircuit circuit = decompose(u);
        const PulseSchedule schedule = absorb_phases(circuit);
        const ComplexMatrix composed = std::polar(1.0, schedule.global_phase) * schedule_to_unitary(schedule);

        NoiseModel noise;
        noise.sigma = 1e-3;
        noise.seed = 7;
        const auto stats = monte_carlo_infidelity(schedule, noise, 30, 30);
        std::printf("N=%2zu gates=%3zu depth=%2zu |U - compiled|=%.2e  1-F(sigma=1e-3)=%.3e\n", n, circuit.gates.size(),
                    circuit.depth(), frobenius_distance(u, composed), stats.mean);
    }
    return 0;
}
