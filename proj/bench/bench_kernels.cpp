// Serial reference vs OpenMP kernels. Prints one row per kernel with the
// best of `--reps` wall times and checks that both paths return the same answer.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foelner/connes.hpp"
#include "foelner/foelner_sets.hpp"
#include "foelner/paradox.hpp"
#include "foelner/random.hpp"

using namespace foelner;

namespace {

double best_of(int reps, const std::function<void()>& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial, double parallel, bool agree) {
    std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
                agree ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs parallel kernel timings"};
    int reps = 3;
    std::size_t frames = 400;
    app.add_option("--reps", reps, "Repetitions per kernel")->capture_default_str();
    app.add_option("--frames", frames, "Frames in the batch kernels")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::printf("workers: %d\n", worker_count());
    std::printf("%-34s %10s %10s %9s  %s\n", "kernel", "serial s", "parallel s", "speedup", "result");

    struct Case {
        std::string name;
        GroupDescriptor d;
        int radius;
    };
    for (const Case& c : {Case{"exhaustive free:2 r=2 (2^17)", GroupDescriptor::free(2), 2},
                          Case{"exhaustive abelian:1 r=10 (2^21)", GroupDescriptor::abelian(1), 10},
                          Case{"exhaustive abelian:2 r=2 (2^13)", GroupDescriptor::abelian(2), 2}}) {
        const auto x = GeneratingSet::standard(c.d);
        SearchResult s{ElementSet(c.d, {}), {}, {}}, p = s;
        const double ts = best_of(reps, [&] { s = exhaustive_min_ratio(c.d, x, c.radius, Execution::Serial); });
        const double tp = best_of(reps, [&] { p = exhaustive_min_ratio(c.d, x, c.radius, Execution::Parallel); });
        row(c.name, ts, tp, s.best == p.best && s.report.ratio == p.report.ratio);
    }

    const GroupDescriptor f2 = GroupDescriptor::free(2);
    std::vector<Frame> batch;
    for (std::size_t i = 0; i < frames; ++i) batch.push_back(random_frame(f2, 8, 5, derive_seed(1, i)));

    std::vector<ParadoxReport> rs, rp;
    const double as = best_of(reps, [&] { rs = chain_audit_batch(batch, Execution::Serial); });
    const double ap = best_of(reps, [&] { rp = chain_audit_batch(batch, Execution::Parallel); });
    bool same = rs.size() == rp.size();
    for (std::size_t i = 0; same && i < rs.size(); ++i) same = rs[i].partition_sum == rp[i].partition_sum;
    row("chain audit batch (" + std::to_string(frames) + " frames)", as, ap, same);

    const auto x = standard_unitaries(f2);
    double es = 0, ep = 0;
    const double qs = best_of(reps, [&] { es = pool_estimate(x, batch, Execution::Serial); });
    const double qp = best_of(reps, [&] { ep = pool_estimate(x, batch, Execution::Parallel); });
    row("pool estimate (" + std::to_string(frames) + " frames)", qs, qp, es == ep);
    return 0;
}
