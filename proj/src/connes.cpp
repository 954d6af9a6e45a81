#include "foelner/connes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foelner/errors.hpp"
#include "foelner/io.hpp"
#include "foelner/random.hpp"

namespace foelner {

std::vector<LabeledUnitary> standard_unitaries(GroupDescriptor descriptor) {
    std::vector<LabeledUnitary> out;
    for (int i = 1; i <= descriptor.rank; ++i) {
        const Word g = Word::generator(descriptor, i);
        out.push_back({g.to_string(), GroupAlgebraElement::translation(g)});
    }
    return out;
}

double QReport::objective() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max({m, r.commutator_ratio, r.trace_defect});
    return m;
}

QReport evaluate_q(const std::vector<LabeledUnitary>& x, const Frame& e, double epsilon) {
    QReport report;
    report.epsilon = epsilon;
    for (const auto& [label, op] : x) {
        const CommutatorRatio ratio = commutator_ratio(op, e);
        report.records.push_back({label, ratio.closed_form, ratio.direct, trace_defect(op, e)});
    }
    report.verdict = report.objective() <= epsilon;
    return report;
}

double q_objective(const std::vector<LabeledUnitary>& x, const Frame& e) {
    double m = 0.0;
    for (const auto& [label, op] : x) {
        if (!op.is_single_unitary()) throw PreconditionError("Q objective needs single unitaries");
        const SmallMatrix a = compress(op, e);
        m = std::max({m, commutator_ratio_from_compression(a), trace_defect_from_compression(op, a)});
    }
    return m;
}

std::vector<Word> prefix_words(GroupDescriptor descriptor, Letter letter, std::size_t count,
                               WitnessEnumeration enumeration) {
    if (!descriptor.is_free()) throw PreconditionError("prefix sets live in free groups");
    std::vector<Word> order;
    for (int g = 1; g <= descriptor.rank; ++g) {
        order.push_back(Word::generator(descriptor, g, 1));
        order.push_back(Word::generator(descriptor, g, -1));
    }
    if (enumeration == WitnessEnumeration::ReverseLetters) std::reverse(order.begin(), order.end());

    std::vector<Word> out;
    std::vector<Word> layer{Word::generator(descriptor, letter.generator, letter.sign)};
    while (out.size() < count) {
        std::vector<Word> next;
        for (const Word& w : layer) {
            if (out.size() < count) out.push_back(w);
            for (const Word& s : order) {
                if (w.codes().back() == -s.codes().front()) continue;
                next.push_back(multiply(w, s));
            }
        }
        layer = std::move(next);
    }
    return out;
}

namespace {

void check_witness_config(const WitnessConfig& cfg) {
    if (cfg.n < 2) throw PreconditionError("witness frames need free rank n >= 2");
    if (cfg.k < 1) throw PreconditionError("witness frame rank k must be >= 1");
    if (cfg.depth < 1) throw PreconditionError("witness depth T must be >= 1");
}

// w = least positive integer congruent to i - 1 mod n
int partner_generator(int i, int n) { return i == 1 ? n : i - 1; }

}  // namespace

std::size_t witness_min_radius(const WitnessConfig& cfg) {
    check_witness_config(cfg);
    const GroupDescriptor d = GroupDescriptor::free(cfg.n);
    const auto words = prefix_words(d, {1, -1}, static_cast<std::size_t>(cfg.depth), cfg.enumeration);
    return static_cast<std::size_t>(cfg.k) + words.back().length() + 2;
}

Frame build_witness_frame(const WitnessConfig& cfg) {
    check_witness_config(cfg);
    const std::size_t min_radius = witness_min_radius(cfg);
    const std::size_t radius = cfg.ambient_radius == 0 ? min_radius : cfg.ambient_radius;
    if (radius < min_radius) {
        throw HeadroomError("witness frame needs ambient radius >= " + std::to_string(min_radius));
    }
    const GroupDescriptor d = GroupDescriptor::free(cfg.n);
    const auto depth = static_cast<std::size_t>(cfg.depth);

    std::vector<std::vector<Word>> tails;
    for (int i = 1; i <= cfg.n; ++i) {
        tails.push_back(prefix_words(d, {partner_generator(i, cfg.n), -1}, depth, cfg.enumeration));
    }
    const double base = static_cast<double>(cfg.n + 1);
    const double truncated_norm2 = 1.0 - std::pow(base, -cfg.depth);
    const double renorm = 1.0 / std::sqrt(truncated_norm2);

    std::vector<L2Vec> columns;
    std::vector<Word> powers;  // a_i^m
    for (int i = 1; i <= cfg.n; ++i) powers.push_back(Word(d));
    for (int m = 1; m <= cfg.k; ++m) {
        for (int i = 1; i <= cfg.n; ++i) {
            powers[static_cast<std::size_t>(i - 1)] =
                multiply(powers[static_cast<std::size_t>(i - 1)], Word::generator(d, i));
        }
        std::vector<L2Vec::Entry> entries;
        for (std::size_t t = 1; t <= depth; ++t) {
            const double amp = std::pow(base, -0.5 * static_cast<double>(t)) * renorm;
            for (int i = 1; i <= cfg.n; ++i) {
                const auto idx = static_cast<std::size_t>(i - 1);
                entries.emplace_back(multiply(powers[idx], tails[idx][t - 1]), amp);
            }
        }
        columns.push_back(L2Vec::from_entries(d, std::move(entries)));
    }
    return Frame(std::move(columns), radius);
}

double witness_formula_epsilon(int n, int k) {
    const double nn = static_cast<double>(n) * n;
    return std::sqrt(2.0 * (1.0 - static_cast<double>(k - 1) / (static_cast<double>(k) * nn)));
}

double witness_limit_epsilon(int n) {
    return std::sqrt(2.0 - 2.0 / (static_cast<double>(n) * n));
}

UpperBoundCertificate formula_certificate(int n, int k) {
    if (n < 2 || k < 1) throw PreconditionError("formula certificate needs n >= 2 and k >= 1");
    UpperBoundCertificate c;
    c.n = n;
    c.k = k;
    c.formula_epsilon = witness_formula_epsilon(n, k);
    c.certified_epsilon = c.formula_epsilon;
    c.limit_epsilon = witness_limit_epsilon(n);
    return c;
}

UpperBoundCertificate witness_certificate(int n, int k, int depth) {
    const Frame frame = build_witness_frame({n, k, depth});
    UpperBoundCertificate c = formula_certificate(n, k);
    c.depth = depth;
    c.q = evaluate_q(standard_unitaries(frame.descriptor()), frame, c.formula_epsilon);
    c.certified_epsilon = c.q.objective();
    c.frame_fingerprint = fingerprint(frame);
    if (std::abs(c.certified_epsilon - c.formula_epsilon) > kCertificateTolerance) {
        throw ConvergenceError("witness frame gives " + std::to_string(c.certified_epsilon) +
                               ", formula gives " + std::to_string(c.formula_epsilon));
    }
    return c;
}

std::vector<UpperBoundCertificate> certificate_sweep(int n, int k_max, EstimateMode mode, int depth) {
    if (k_max < 1) throw PreconditionError("k_max must be >= 1");
    std::vector<UpperBoundCertificate> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        out.push_back(mode == EstimateMode::Formula ? formula_certificate(n, k)
                                                    : witness_certificate(n, k, depth));
    }
    return out;
}

UpperBoundCertificate foelner_upper_estimate(int n, int k_max, EstimateMode mode, int depth) {
    auto sweep = certificate_sweep(n, k_max, mode, depth);
    return *std::min_element(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) {
        return a.certified_epsilon < b.certified_epsilon;
    });
}

namespace {

L2Vec random_column(GroupDescriptor d, const std::vector<Word>& pool, std::size_t max_support, Rng& rng) {
    const std::size_t s = 1 + rng.below(std::min(pool.size(), max_support));
    std::vector<L2Vec::Entry> entries;
    for (std::size_t j = 0; j < s; ++j) entries.emplace_back(pool[rng.below(pool.size())], rng.complex_gaussian());
    return L2Vec::from_entries(d, std::move(entries));
}

}  // namespace

Frame random_frame(GroupDescriptor descriptor, std::size_t rank, std::size_t ambient_radius,
                   std::uint64_t seed) {
    if (ambient_radius < 1) throw PreconditionError("ambient radius must be >= 1");
    const Ball b(descriptor, static_cast<int>(ambient_radius) - 1);
    if (rank < 1 || rank > b.size()) {
        throw PreconditionError("rank " + std::to_string(rank) + " does not fit in ball of size " +
                                std::to_string(b.size()));
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<L2Vec> raw;
        for (std::size_t c = 0; c < rank; ++c) raw.push_back(random_column(descriptor, b.elements(), 12, rng));
        try {
            return gram_schmidt(std::move(raw), ambient_radius);
        } catch (const RankDeficiencyError&) {
            // Redraw.
        }
    }
    throw ConvergenceError("could not draw an independent random frame");
}

namespace {

// Frames on ball(R - 1) stored densely, one slot per ball element. The anneal
// inner loop runs here; the Frame type is rebuilt only for accepted bests.
struct DenseSpace {
    const Ball* ball = nullptr;
    struct Op {
        Complex coefficient;
        bool is_identity = false;
        std::vector<long> image;  // index of g*w in the ball, -1 outside
    };
    std::vector<Op> ops;
};

using DenseColumn = std::vector<Complex>;

DenseSpace make_dense_space(const Ball& ball, const std::vector<LabeledUnitary>& x, std::size_t ambient_radius) {
    DenseSpace sp;
    sp.ball = &ball;
    for (const auto& [label, op] : x) {
        if (!op.is_single_unitary()) throw PreconditionError("Q objective needs single unitaries");
        if (ambient_radius - 1 + op.operator_radius() > ambient_radius) {
            throw HeadroomError("unitary " + label + " needs more headroom than ambient radius " +
                                std::to_string(ambient_radius) + " leaves");
        }
        const auto& [g, c] = op.terms().front();
        DenseSpace::Op d{c, g.is_identity(), std::vector<long>(ball.size(), -1)};
        for (std::size_t i = 0; i < ball.size(); ++i) {
            if (auto j = ball.index_of(multiply(g, ball.elements()[i]))) d.image[i] = static_cast<long>(*j);
        }
        sp.ops.push_back(std::move(d));
    }
    return sp;
}

DenseColumn to_dense(const Ball& ball, const L2Vec& v) {
    DenseColumn out(ball.size());
    for (const auto& [w, amp] : v.entries()) out[*ball.index_of(w)] = amp;
    return out;
}

Complex dense_inner(const DenseColumn& x, const DenseColumn& y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

// Same passes and independence test as gram_schmidt. False on rank deficiency.
bool dense_orthonormalize(std::vector<DenseColumn>& cols, double independence) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        DenseColumn& v = cols[j];
        const double original = std::sqrt(std::real(dense_inner(v, v)));
        if (original == 0.0) return false;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t q = 0; q < j; ++q) {
                const Complex c = dense_inner(v, cols[q]);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * cols[q][i];
            }
        }
        const double residual = std::sqrt(std::real(dense_inner(v, v)));
        if (residual <= independence * original) return false;
        for (auto& z : v) z /= residual;
    }
    return true;
}

double dense_objective(const DenseSpace& sp, const std::vector<DenseColumn>& cols) {
    const std::size_t k = cols.size();
    double m = 0.0;
    for (const auto& op : sp.ops) {
        SmallMatrix a(k);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q) {
                Complex s{};
                for (std::size_t i = 0; i < cols[p].size(); ++i) {
                    const long j = op.image[i];
                    if (j >= 0) s += cols[p][i] * std::conj(cols[q][static_cast<std::size_t>(j)]);
                }
                a(q, p) = op.coefficient * s;
            }
        }
        const Complex lambda_e = op.is_identity ? op.coefficient : Complex{};
        m = std::max({m, commutator_ratio_from_compression(a), std::abs(lambda_e - a.normalized_trace())});
    }
    return m;
}

Frame to_frame(const Ball& ball, const std::vector<DenseColumn>& cols, std::size_t ambient_radius) {
    const GroupDescriptor d = ball.descriptor();
    std::vector<L2Vec> out;
    for (const auto& c : cols) {
        std::vector<L2Vec::Entry> entries;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] != Complex{}) entries.emplace_back(ball.elements()[i], c[i]);
        }
        out.push_back(L2Vec::from_entries(d, std::move(entries)));
    }
    return Frame(std::move(out), ambient_radius);
}

}  // namespace

ProjectionSearchResult anneal_projection(const ProjectionSearchConfig& cfg) {
    if (cfg.ambient_radius < 2) throw PreconditionError("projection search needs ambient radius >= 2");
    if (cfg.rank < 1) throw PreconditionError("projection search needs rank >= 1");
    if (cfg.unitaries.empty()) throw PreconditionError("projection search needs at least one unitary");

    const Ball pool(cfg.descriptor, static_cast<int>(cfg.ambient_radius) - 1);
    const DenseSpace space = make_dense_space(pool, cfg.unitaries, cfg.ambient_radius);
    const double independence = L2Tolerances{}.independence;
    Rng rng(cfg.seed);

    const Frame start = random_frame(cfg.descriptor, cfg.rank, cfg.ambient_radius, derive_seed(cfg.seed, 0));
    std::vector<DenseColumn> current;
    for (const L2Vec& c : start.columns()) current.push_back(to_dense(pool, c));
    double current_obj = dense_objective(space, current);

    ProjectionSearchResult result{start, {}, {}, 0};
    std::vector<DenseColumn> best = current;
    double best_obj = current_obj;
    result.history.push_back({0, current_obj, best_obj});

    double scale = cfg.initial_scale;
    double temperature = cfg.initial_temperature;
    for (std::int64_t it = 1; it <= cfg.iterations && best_obj > 0.0;
         ++it, scale *= cfg.scale_decay, temperature *= cfg.temperature_decay) {
        const std::size_t col = rng.below(cfg.rank);
        std::vector<DenseColumn> candidate = current;
        for (std::size_t j = 0; j < cfg.perturbation_support; ++j) {
            const std::size_t at = rng.below(pool.size());
            candidate[col][at] += scale * rng.complex_gaussian();
        }
        if (!dense_orthonormalize(candidate, independence)) {
            ++result.rejected_rank_deficient;
            continue;
        }
        const double obj = dense_objective(space, candidate);
        const bool accept = obj <= current_obj ||
                            (temperature > 0 && rng.uniform() < std::exp((current_obj - obj) / temperature));
        if (!accept) continue;
        current = std::move(candidate);
        current_obj = obj;
        if (obj < best_obj) {
            best_obj = obj;
            best = current;
        }
        result.history.push_back({it, obj, best_obj});
    }
    result.best = to_frame(pool, best, cfg.ambient_radius);
    result.report = evaluate_q(cfg.unitaries, result.best, q_objective(cfg.unitaries, result.best));
    return result;
}

double pool_estimate(const std::vector<LabeledUnitary>& x, const std::vector<Frame>& pool, Execution exec) {
    if (pool.empty()) throw PreconditionError("candidate pool is empty");
    std::vector<double> values(pool.size());
    for_each_index(pool.size(), exec, [&](std::size_t i) { values[i] = q_objective(x, pool[i]); });
    return *std::min_element(values.begin(), values.end());
}

}  // namespace foelner
