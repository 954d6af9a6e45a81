#include "foelner/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "foelner/connes.hpp"
#include "foelner/errors.hpp"
#include "foelner/foelner_sets.hpp"
#include "foelner/paradox.hpp"
#include "foelner/random.hpp"

namespace foelner::cli {

namespace {

std::string rational_text(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

Json words_json(const std::vector<Word>& words) {
    Json j = Json::array();
    for (const Word& w : words) j.push_back(w.to_string());
    return j;
}

Json boundary_json(const BoundaryReport& r) {
    return Json{{"set_size", r.set_size},
                {"boundary_size", r.boundary_size},
                {"ratio_rational", rational_text(r.ratio)},
                {"ratio_float", r.ratio_float()}};
}

Json q_records_json(const QReport& q) {
    Json arr = Json::array();
    for (const auto& r : q.records) {
        arr.push_back(Json{{"label", r.label},
                           {"ratio", r.commutator_ratio},
                           {"direct_ratio", r.direct_ratio},
                           {"defect", r.trace_defect}});
    }
    return arr;
}

std::uint64_t require_seed(const RunConfig& c) {
    if (!c.seed) throw PreconditionError("command '" + c.command + "' is stochastic and needs --seed");
    return *c.seed;
}

void require_json(const RunConfig& c, const char* what) {
    if (c.format == Format::Csv) throw PreconditionError(std::string("csv output is not offered for ") + what);
}

RunReport run_group(const RunConfig& c) {
    const GroupDescriptor d = GroupDescriptor::parse(c.group);
    const GeneratingSet x = c.gens.empty() ? GeneratingSet::standard(d)
                                           : GeneratingSet(d, parse_generator_list(d, c.gens));
    RunReport rep;
    Json& res = rep.results;
    res["group"] = d.to_string();
    res["generators"] = words_json(x.generators());
    res["mode"] = c.mode;

    if (c.mode == "exhaustive") {
        require_json(c, "exhaustive mode");
        const SearchResult sr = exhaustive_min_ratio(d, x, c.radius);
        res["label"] = "exact minimum over non-empty subsets of ball(" + std::to_string(c.radius) + ")";
        res["best_set"] = words_json(sr.best.members());
        res.update(boundary_json(sr.report));
        res["history"] = Json::array();
    } else if (c.mode == "balls") {
        const auto family = ball_family_ratios(d, x, c.radius);
        std::size_t best = 0;
        Json history = Json::array();
        std::ostringstream csv;
        csv << "radius,set_size,boundary_size,ratio_rational,ratio_float\n";
        for (std::size_t i = 0; i < family.size(); ++i) {
            Json row = boundary_json(family[i]);
            row["radius"] = i + 1;
            history.push_back(std::move(row));
            csv << i + 1 << ',' << family[i].set_size << ',' << family[i].boundary_size << ','
                << rational_text(family[i].ratio) << ',' << format_double(family[i].ratio_float()) << '\n';
            if (family[i].ratio < family[best].ratio) best = i;
        }
        res["label"] = "ball family ratios for r = 1.." + std::to_string(c.radius);
        res["best_set"] = words_json(Ball(d, static_cast<int>(best) + 1).elements());
        res.update(boundary_json(family[best]));
        if (d.is_free() && x.generators() == standard_generators(d) && d.rank >= 2) {
            res["limit_rational"] = rational_text(Rational(2 * d.rank - 2, 2 * d.rank - 1));
        }
        res["history"] = std::move(history);
        if (c.format == Format::Csv) rep.csv = csv.str();
    } else if (c.mode == "search") {
        require_json(c, "search mode");
        LocalSearchConfig lc;
        lc.radius = c.radius;
        lc.seed = require_seed(c);
        lc.iterations = c.iters;
        const SearchResult sr = local_search_min_ratio(d, x, lc);
        res["label"] = "heuristic local search within ball(" + std::to_string(c.radius) + ")";
        res["best_set"] = words_json(sr.best.members());
        res.update(boundary_json(sr.report));
        Json history = Json::array();
        for (const auto& s : sr.history) {
            history.push_back(Json{{"iteration", s.iteration},
                                   {"set_size", s.set_size},
                                   {"boundary_size", s.boundary_size},
                                   {"ratio_rational", rational_text(s.ratio)}});
        }
        res["history"] = std::move(history);
    } else {
        throw PreconditionError("unknown group mode '" + c.mode + "'");
    }
    return rep;
}

RunReport run_witness(const RunConfig& c) {
    RunReport rep;
    Json& res = rep.results;
    res["config"] = Json{{"n", c.n}, {"k", c.k}, {"depth", c.depth}, {"formula_only", c.formula_only}};
    if (c.k_max > 0) {
        const EstimateMode mode = c.formula_only ? EstimateMode::Formula : EstimateMode::Frame;
        const auto sweep = certificate_sweep(c.n, c.k_max, mode, c.depth);
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "k,certified_epsilon,formula_epsilon\n";
        for (const auto& cert : sweep) {
            rows.push_back(Json{{"k", cert.k},
                                {"certified_epsilon", cert.certified_epsilon},
                                {"formula_epsilon", cert.formula_epsilon}});
            csv << cert.k << ',' << format_double(cert.certified_epsilon) << ','
                << format_double(cert.formula_epsilon) << '\n';
        }
        const auto& best = *std::min_element(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) {
            return a.certified_epsilon < b.certified_epsilon;
        });
        res["sweep"] = std::move(rows);
        res["best_k"] = best.k;
        res["certified_epsilon"] = best.certified_epsilon;
        res["formula_epsilon"] = best.formula_epsilon;
        res["limit_epsilon"] = best.limit_epsilon;
        if (c.format == Format::Csv) rep.csv = csv.str();
        return rep;
    }
    require_json(c, "single witness certificates");
    const UpperBoundCertificate cert =
        c.formula_only ? formula_certificate(c.n, c.k) : witness_certificate(c.n, c.k, c.depth);
    res["per_unitary"] = q_records_json(cert.q);
    res["certified_epsilon"] = cert.certified_epsilon;
    res["formula_epsilon"] = cert.formula_epsilon;
    res["limit_epsilon"] = cert.limit_epsilon;
    res["frame_fingerprint"] = cert.frame_fingerprint;
    return rep;
}

RunReport run_scan(const RunConfig& c) {
    require_json(c, "scan");
    ProjectionSearchConfig pc;
    pc.descriptor = GroupDescriptor::free(c.n);
    pc.rank = static_cast<std::size_t>(c.rank);
    pc.ambient_radius = static_cast<std::size_t>(c.radius);
    pc.seed = require_seed(c);
    pc.iterations = c.iters;
    pc.unitaries = standard_unitaries(pc.descriptor);
    const ProjectionSearchResult sr = anneal_projection(pc);

    RunReport rep;
    Json& res = rep.results;
    res["config"] = Json{{"n", c.n}, {"rank", c.rank}, {"radius", c.radius}, {"iters", c.iters}, {"seed", pc.seed}};
    res["label"] = "achieved objective within rank " + std::to_string(c.rank) + ", support radius " +
                   std::to_string(c.radius - 1);
    res["per_unitary"] = q_records_json(sr.report);
    res["objective"] = sr.report.objective();
    res["rejected_rank_deficient"] = sr.rejected_rank_deficient;
    res["frame_fingerprint"] = fingerprint(sr.best);
    Json history = Json::array();
    for (const auto& s : sr.history) {
        history.push_back(Json{{"iteration", s.iteration}, {"objective", s.objective}, {"best", s.best}});
    }
    res["history"] = std::move(history);
    return rep;
}

// Random frames (and optionally annealed ones) in l2(F_2) for the audit.
std::vector<Frame> audit_frames(const RunConfig& c, std::uint64_t seed) {
    const GroupDescriptor d = GroupDescriptor::free(2);
    const auto rank = static_cast<std::size_t>(c.rank);
    const auto radius = static_cast<std::size_t>(c.radius);
    std::vector<std::optional<Frame>> slots(static_cast<std::size_t>(c.frames + c.anneal));
    for_each_index(slots.size(), Execution::Parallel, [&](std::size_t i) {
        if (i < static_cast<std::size_t>(c.frames)) {
            slots[i].emplace(random_frame(d, rank, radius, derive_seed(seed, i)));
            return;
        }
        ProjectionSearchConfig pc;
        pc.descriptor = d;
        pc.rank = rank;
        pc.ambient_radius = radius;
        pc.seed = derive_seed(seed, i);
        pc.iterations = c.anneal_iters;
        pc.unitaries = standard_unitaries(d);
        slots[i].emplace(anneal_projection(pc).best);
    });
    std::vector<Frame> frames;
    for (auto& s : slots) frames.push_back(std::move(*s));
    return frames;
}

RunReport run_audit(const RunConfig& c) {
    require_json(c, "audit");
    const std::uint64_t seed = require_seed(c);
    if (c.frames < 0 || c.anneal < 0 || c.frames + c.anneal < 1) {
        throw PreconditionError("audit needs at least one frame");
    }
    const std::vector<Frame> frames = audit_frames(c, seed);
    const std::vector<ParadoxReport> reports = chain_audit_batch(frames);
    const ContradictionThreshold th = contradiction_threshold();
    const SetIdentityReport ids = verify_set_identities(std::max(2, c.radius));

    std::size_t tightest = 0;
    int contradictions = 0, inconclusive = 0, consistent = 0;
    double max_measured = 0.0;
    bool bounds_hold = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        const auto& t = reports[tightest];
        if (std::max(r.ratio_a, r.ratio_b) < std::max(t.ratio_a, t.ratio_b)) tightest = i;
        max_measured = std::max({max_measured, r.displacement_a.measured, r.displacement_b.measured});
        bounds_hold = bounds_hold && r.displacement_a.holds && r.displacement_b.holds;
        switch (r.verdict) {
            case ChainVerdict::Contradiction: ++contradictions; break;
            case ChainVerdict::Inconclusive: ++inconclusive; break;
            case ChainVerdict::Consistent: ++consistent; break;
        }
    }
    const ParadoxReport& t = reports[tightest];

    RunReport rep;
    Json& res = rep.results;
    res["frames"] = Json{{"random", c.frames}, {"annealed", c.anneal}, {"rank", c.rank}, {"radius", c.radius}};
    Json cvals = Json::object();
    for (const auto& e : t.partition) cvals[e.label] = e.value;
    for (const auto& e : t.translates) cvals[e.label] = e.value;
    res["tightest_frame"] = tightest;
    res["c_values"] = std::move(cvals);
    res["ratios"] = Json{{"a1", t.ratio_a}, {"a2", t.ratio_b}};
    res["min_max_ratio"] = std::max(t.ratio_a, t.ratio_b);
    res["displacement"] = Json{{"measured", Json{{"a1", t.displacement_a.measured}, {"a2", t.displacement_b.measured}}},
                               {"certified", Json{{"a1", t.displacement_a.certified}, {"a2", t.displacement_b.certified}}},
                               {"max_measured_all_frames", max_measured},
                               {"bounds_hold_all_frames", bounds_hold}};
    res["pincer"] = Json{{"lower", t.pincer_lower}, {"upper", t.pincer_upper},
                         {"cover_branch", t.cover_branch}, {"triple_branch", t.triple_branch}};
    res["thresholds"] = Json{{"literal", th.literal}, {"derived", th.derived}};
    res["set_identities"] = Json{{"radius", ids.radius},
                                 {"translates_disjoint", ids.translates_disjoint},
                                 {"corrected_cover_exact", ids.corrected_cover_exact},
                                 {"literal_cover_exact", ids.literal_cover_exact},
                                 {"literal_uncovered", ids.literal_uncovered},
                                 {"literal_gap_is_prefix_a1", ids.literal_gap_is_prefix_a}};
    res["verdict_counts"] = Json{{"contradiction", contradictions}, {"consistent", consistent}, {"inconclusive", inconclusive}};
    res["verdict"] = contradictions > 0 ? "contradiction" : (inconclusive > 0 ? "inconclusive" : "consistent");
    if (c.paper_mode) {
        const LiteralModeTrace p = literal_mode_trace();
        res["paper_mode"] = Json{{"lower", rational_text(p.lower)},
                                 {"upper", rational_text(p.upper)},
                                 {"pivot", rational_text(p.pivot)},
                                 {"lower_exceeds_pivot", p.lower_exceeds_pivot},
                                 {"upper_below_pivot", p.upper_below_pivot}};
    }
    if (th.discrepancy) {
        rep.warnings.push_back("literal displacement constant 4/49 bounds a squared quantity; verdicts use the "
                               "re-derived threshold " + format_double(th.derived) + " instead of 1/7");
    }
    if (!ids.literal_cover_exact) {
        rep.warnings.push_back("literal cover S u aS misses " + std::to_string(ids.literal_uncovered) +
                               " words beginning with a1; the corrected cover S_a1 u aS is used");
    }
    return rep;
}

RunReport run_identity_check(const RunConfig& c) {
    require_json(c, "identity-check");
    const std::uint64_t seed = require_seed(c);
    if (c.trials < 1) throw PreconditionError("identity-check needs --trials >= 1");
    const GroupDescriptor d = GroupDescriptor::free(2);
    const std::vector<GroupAlgebraElement> us{
        GroupAlgebraElement::translation(Word::generator(d, 1)),
        GroupAlgebraElement::translation(Word::generator(d, 2)),
        GroupAlgebraElement::translation(Word::generator(d, 1, -1))};

    struct Trial {
        double discrepancy = 0.0;
        bool ratio_in_range = true;
        bool defect_in_range = true;
    };
    std::vector<Trial> trials(static_cast<std::size_t>(c.trials));
    for_each_index(trials.size(), Execution::Parallel, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const std::size_t radius = 2 + rng.below(4);  // 2..5
        const std::size_t max_rank = std::min<std::size_t>(8, Ball(d, static_cast<int>(radius) - 1).size());
        const std::size_t rank = 1 + rng.below(max_rank);
        const Frame e = random_frame(d, rank, radius, rng.next());
        for (const auto& u : us) {
            const CommutatorRatio r = commutator_ratio(u, e);
            const double defect = trace_defect(u, e);
            trials[i].discrepancy = std::max(trials[i].discrepancy, std::abs(r.direct - r.closed_form));
            trials[i].ratio_in_range = trials[i].ratio_in_range && r.closed_form >= 0.0 &&
                                       r.closed_form <= std::sqrt(2.0) + 1e-12;
            trials[i].defect_in_range = trials[i].defect_in_range && defect >= 0.0 && defect <= 2.0;
        }
    });
    int agreements = 0;
    double max_disc = 0.0;
    bool ratio_ok = true, defect_ok = true;
    for (const auto& t : trials) {
        if (t.discrepancy < 1e-9) ++agreements;
        max_disc = std::max(max_disc, t.discrepancy);
        ratio_ok = ratio_ok && t.ratio_in_range;
        defect_ok = defect_ok && t.defect_in_range;
    }
    RunReport rep;
    rep.results = Json{{"trials", c.trials},
                       {"unitaries", Json::array({"a1", "a2", "A1"})},
                       {"tolerance", 1e-9},
                       {"agreements", agreements},
                       {"max_discrepancy", max_disc},
                       {"ratios_in_range", ratio_ok},
                       {"defects_in_range", defect_ok}};
    return rep;
}

}  // namespace

Json RunReport::to_json() const {
    return Json{{"tool", "foelner"},
                {"version", kToolVersion},
                {"config", config},
                {"results", results},
                {"warnings", warnings},
                {"wall_time_s", wall_time_s}};
}

Json config_json(const RunConfig& c) {
    Json j{{"command", c.command}};
    if (c.command == "group") {
        j["group"] = c.group;
        j["gens"] = c.gens.empty() ? "standard" : c.gens;
        j["radius"] = c.radius;
        j["mode"] = c.mode;
        if (c.mode == "search") j["iters"] = c.iters;
    } else if (c.command == "witness") {
        j["n"] = c.n;
        j["k"] = c.k;
        j["depth"] = c.depth;
        j["formula_only"] = c.formula_only;
        j["k_max"] = c.k_max;
    } else if (c.command == "scan") {
        j["n"] = c.n;
        j["rank"] = c.rank;
        j["radius"] = c.radius;
        j["iters"] = c.iters;
    } else if (c.command == "audit") {
        j["rank"] = c.rank;
        j["radius"] = c.radius;
        j["frames"] = c.frames;
        j["anneal"] = c.anneal;
        j["anneal_iters"] = c.anneal_iters;
        j["paper_mode"] = c.paper_mode;
    } else if (c.command == "identity-check") {
        j["trials"] = c.trials;
    }
    j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    j["format"] = c.format == Format::Csv ? "csv" : "json";
    j["out"] = c.out;
    return j;
}

RunReport run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunReport rep;
    if (config.command == "group") {
        rep = run_group(config);
    } else if (config.command == "witness") {
        rep = run_witness(config);
    } else if (config.command == "scan") {
        rep = run_scan(config);
    } else if (config.command == "audit") {
        rep = run_audit(config);
    } else if (config.command == "identity-check") {
        rep = run_identity_check(config);
    } else {
        throw PreconditionError("unknown command '" + config.command + "'");
    }
    rep.config = config_json(config);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Foelner-type invariants for free and free abelian groups and L(F_n)", "foelner"};
    app.require_subcommand(1);
    RunConfig c;
    std::uint64_t seed = 0;
    std::string format = "json";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Write the report here instead of stdout");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* group = app.add_subcommand("group", "Boundary ratios of finite subsets of a marked group");
    group->add_option("--group", c.group, "free:N or abelian:N")->capture_default_str();
    group->add_option("--gens", c.gens, "Generators, e.g. a1,a2 (default: standard)");
    group->add_option("--radius", c.radius, "Ball radius")->capture_default_str();
    group->add_option("--mode", c.mode, "exhaustive | balls | search")
        ->check(CLI::IsMember({"exhaustive", "balls", "search"}))
        ->capture_default_str();
    group->add_option("--iters", c.iters, "Local search iterations")->capture_default_str();
    group->add_option("--seed", seed, "RNG seed (search mode)");
    add_common(group);

    auto* witness = app.add_subcommand("witness", "Explicit upper-bound certificate for L(F_n)");
    witness->add_option("--n", c.n, "Free rank")->capture_default_str();
    witness->add_option("--k", c.k, "Frame rank")->capture_default_str();
    witness->add_option("--depth", c.depth, "Truncation depth T")->capture_default_str();
    witness->add_flag("--formula-only", c.formula_only, "Skip the frame, evaluate the closed formula");
    witness->add_option("--k-max", c.k_max, "Sweep k = 1..K");
    add_common(witness);

    auto* scan = app.add_subcommand("scan", "Annealed search for projections with a small Q-objective");
    scan->add_option("--n", c.n, "Free rank")->capture_default_str();
    scan->add_option("--rank", c.rank, "Projection rank")->capture_default_str();
    scan->add_option("--radius", c.radius, "Ambient radius R")->capture_default_str();
    scan->add_option("--iters", c.iters, "Iterations")->capture_default_str();
    scan->add_option("--seed", seed, "RNG seed");
    add_common(scan);

    auto* audit = app.add_subcommand("audit", "Audit of the paradoxical-decomposition lower-bound argument");
    audit->add_option("--rank", c.rank, "Frame rank")->capture_default_str();
    audit->add_option("--radius", c.radius, "Ambient radius R")->capture_default_str();
    audit->add_option("--frames", c.frames, "Random frames")->capture_default_str();
    audit->add_option("--anneal", c.anneal, "Annealed frames")->capture_default_str();
    audit->add_option("--anneal-iters", c.anneal_iters, "Iterations per annealed frame")->capture_default_str();
    audit->add_flag("--paper-mode", c.paper_mode, "Replay the literal constants");
    audit->add_option("--seed", seed, "RNG seed");
    add_common(audit);

    auto* identity = app.add_subcommand("identity-check", "Hilbert-Schmidt identity on random frames");
    identity->add_option("--trials", c.trials, "Random frames")->capture_default_str();
    identity->add_option("--seed", seed, "RNG seed");
    add_common(identity);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    c.command = chosen->get_name();
    if (const CLI::Option* o = chosen->get_option_no_throw("--seed"); o != nullptr && o->count() > 0) c.seed = seed;
    c.format = format == "csv" ? Format::Csv : Format::Json;

    try {
        const RunReport rep = run(c);
        std::string text = c.format == Format::Csv ? rep.csv : rep.to_json().dump(2) + "\n";
        if (c.out.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out);
            if (!f) throw PreconditionError("cannot write to " + c.out);
            f << text;
        }
        for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
        return 0;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace foelner::cli
