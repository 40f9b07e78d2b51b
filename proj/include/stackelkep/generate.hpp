#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/sat.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace stackelkep {

/// Seeded generators for tests and `gen`. Only mt19937_64 output is used
/// (no std distributions), so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n must be positive.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    /// Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// Nodes 0..leaders-1 are leader nodes; every ordered pair gets an arc with
/// probability `density`. No labels, no threshold.
KepInstance random_kep(std::size_t nodes, std::size_t leaders, double density, std::size_t K, Rng& rng);

/// Clauses of 1 to 3 distinct variables with random signs, resampled until
/// every variable occurs and some variable occurs in both polarities (the
/// to_sat22 preconditions).
CnfFormula random_3cnf(std::size_t num_vars, std::size_t num_clauses, Rng& rng);

/// Random 3-CNF over |X|+|Y| variables (X = 1..nx), quantifiers attached.
AdversarialSatInstance random_adversarial_3cnf(std::size_t nx, std::size_t ny,
                                               std::size_t num_clauses, Rng& rng);

/// Direct (2,2) sampler: the two unnegated and two negated occurrences of each
/// variable are dealt into `num_clauses` clauses of 1 to 3 literals.
AdversarialSatInstance random_adversarial_22(std::size_t nx, std::size_t ny,
                                             std::size_t num_clauses, Rng& rng);

/// `gen asat`: a random adversarial 3-CNF pushed through adversarialize.
AdversarialSatInstance random_asat(std::size_t nx, std::size_t ny, std::size_t num_clauses, Rng& rng);

} // namespace stackelkep
