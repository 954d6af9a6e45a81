#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "foelner/l2.hpp"
#include "foelner/parallel.hpp"

namespace foelner {

struct LabeledUnitary {
    std::string label;
    GroupAlgebraElement op;
};

// {L_{a_1}, ..., L_{a_n}} labelled a1..an.
std::vector<LabeledUnitary> standard_unitaries(GroupDescriptor descriptor);

struct QReport {
    struct Record {
        std::string label;
        double commutator_ratio = 0.0;  // closed form
        double direct_ratio = 0.0;      // group-basis expansion
        double trace_defect = 0.0;
    };

    std::vector<Record> records;
    double epsilon = 0.0;
    bool verdict = false;

    // max over unitaries of max(ratio, defect)
    double objective() const;
};

// Finite-rank check of Q(X, epsilon) for the projection onto span(e).
QReport evaluate_q(const std::vector<LabeledUnitary>& x, const Frame& e, double epsilon);

// Same objective as QReport::objective(), closed-form path only.
double q_objective(const std::vector<LabeledUnitary>& x, const Frame& e);

enum class WitnessEnumeration {
    Shortlex,
    // Shortlex with the letter order reversed inside each length.
    ReverseLetters,
};

struct WitnessConfig {
    int n = 2;      // free rank
    int k = 1;      // frame rank
    int depth = 1;  // truncation T
    WitnessEnumeration enumeration = WitnessEnumeration::Shortlex;
    // 0 picks the minimum admissible radius.
    std::size_t ambient_radius = 0;
};

// First `count` reduced words of F_n beginning with `letter`.
std::vector<Word> prefix_words(GroupDescriptor descriptor, Letter letter, std::size_t count,
                               WitnessEnumeration enumeration = WitnessEnumeration::Shortlex);

// Smallest ambient radius build_witness_frame accepts.
std::size_t witness_min_radius(const WitnessConfig& cfg);

// Columns xi_1..xi_k with xi_m = sum_{t<=T} (n+1)^{-t/2} sum_i a_i^m g_t^{(i)},
// each renormalized after truncation.
Frame build_witness_frame(const WitnessConfig& cfg);

// sqrt(2) sqrt(1 - (k-1)/(k n^2))
double witness_formula_epsilon(int n, int k);
// sqrt(2 - 2/n^2)
double witness_limit_epsilon(int n);

struct UpperBoundCertificate {
    int n = 0;
    int k = 0;
    int depth = 0;
    double certified_epsilon = 0.0;
    double formula_epsilon = 0.0;
    double limit_epsilon = 0.0;
    std::string frame_fingerprint;  // empty in formula-only mode
    QReport q;
};

inline constexpr double kCertificateTolerance = 1e-9;

// Evaluates Q over the standard generators on the witness frame and checks
// the result against the closed formula (ConvergenceError on mismatch).
UpperBoundCertificate witness_certificate(int n, int k, int depth);

UpperBoundCertificate formula_certificate(int n, int k);

enum class EstimateMode { Frame, Formula };

// Best certificate over k = 1..k_max.
UpperBoundCertificate foelner_upper_estimate(int n, int k_max, EstimateMode mode, int depth = 2);

// certified_epsilon for k = 1..k_max.
std::vector<UpperBoundCertificate> certificate_sweep(int n, int k_max, EstimateMode mode, int depth = 2);

// Frame with Gaussian complex amplitudes on random words of
// ball(ambient_radius - 1). Deterministic per seed.
Frame random_frame(GroupDescriptor descriptor, std::size_t rank, std::size_t ambient_radius,
                   std::uint64_t seed);

struct ProjectionSearchConfig {
    GroupDescriptor descriptor = GroupDescriptor::free(2);
    std::size_t rank = 1;
    std::size_t ambient_radius = 2;
    std::uint64_t seed = 0;
    std::int64_t iterations = 1000;
    std::size_t perturbation_support = 3;
    double initial_scale = 0.5;
    double scale_decay = 0.9995;
    double initial_temperature = 0.02;
    double temperature_decay = 0.999;
    std::vector<LabeledUnitary> unitaries;
};

struct ProjectionSearchResult {
    struct Step {
        std::int64_t iteration = 0;
        double objective = 0.0;
        double best = 0.0;
    };

    Frame best;
    QReport report;
    std::vector<Step> history;
    std::int64_t rejected_rank_deficient = 0;
};

// Annealing over rank-k frames supported in ball(R - 1). The reported
// objective is achieved by the returned frame.
ProjectionSearchResult anneal_projection(const ProjectionSearchConfig& cfg);

// min over the pool of q_objective(x, frame).
double pool_estimate(const std::vector<LabeledUnitary>& x, const std::vector<Frame>& pool,
                     Execution exec = Execution::Parallel);

}  // namespace foelner
