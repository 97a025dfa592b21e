#include "ffk/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include "ffk/homotopy.hpp"
#include "ffk/jsonio.hpp"
#include "ffk/ratpoint.hpp"

namespace ffk {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Err::SyntaxError:
        case Err::UnknownVariable:
        case Err::NonPolynomial:
            return 1;
        case Err::FieldTooSmall:
        case Err::InconsistentSystem:
        case Err::NotPrime:
        case Err::TooLarge:
        case Err::InsufficientField:
            return 2;
        case Err::RetriesExhausted:
        case Err::BudgetExhausted:
            return 3;
        default:
            return 4;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Err::SyntaxError, "cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliOptions {
    std::string input;
    std::string fiber_path;
    u64 seed = 0;
    unsigned max_retries = 16;
    unsigned parallel_trials = 1;
    unsigned budget_lambda = 8, budget_alpha = 8, budget_omega = 8, budget_a = 0;
    unsigned ext_degree = 0;
    std::string emit = "point";
    std::string format = "json";
};

SolveConfig make_config(const CliOptions& o) {
    if (o.max_retries == 0 || o.parallel_trials == 0 || o.budget_lambda == 0 ||
        o.budget_alpha == 0 || o.budget_omega == 0)
        raise(Err::SyntaxError, "retry budgets must be at least 1");
    SolveConfig cfg;
    cfg.seed = o.seed;
    cfg.max_global_retries = o.max_retries;
    cfg.lambda_budget = o.budget_lambda;
    cfg.alpha_budget = o.budget_alpha;
    cfg.omega_budget = o.budget_omega;
    cfg.point_budget = o.budget_a;
    cfg.parallel_trials = o.parallel_trials;
    if (o.ext_degree) cfg.k_override = o.ext_degree;
    return cfg;
}

void print_json(const Json& j, const CliOptions& o, std::ostream& out) {
    if (o.format == "text") {
        // terse line-per-entry rendering of the same data
        std::function<void(const Json&, const std::string&)> walk =
            [&](const Json& v, const std::string& prefix) {
                if (v.is_object()) {
                    for (auto it = v.begin(); it != v.end(); ++it)
                        walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
                } else if (v.is_array()) {
                    out << prefix << " = " << v.dump() << "\n";
                } else {
                    out << prefix << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
                        << "\n";
                }
            };
        walk(j, "");
    } else {
        out << j.dump(2) << "\n";
    }
}

Json point_json(const ParsedSystem& ps, const RatPointResult& res, u64 seed) {
    Json j;
    j["schema"] = kSchemaTag;
    j["command"] = "solve";
    j["field"] = field_to_json(ps.base);
    Json pt = Json::array();
    for (auto& c : res.point.coords) pt.push_back(element_to_json(c));
    j["point"] = pt;
    Json rs = Json::array();
    for (auto& c : res.point.residuals) rs.push_back(element_to_json(c));
    j["residuals"] = rs;
    j["trace"] = trace_to_json(res.trace, seed);
    return j;
}

RatPointResult solve_racing(const ParsedSystem& ps, const SolveConfig& cfg, u64 seed,
                            unsigned trials) {
    if (trials <= 1) {
        Rng rng(seed);
        return compute_rational_point(ps, cfg, rng);
    }
    // deterministic racing: independent streams, lowest successful index wins
    std::vector<std::future<RatPointResult>> futs;
    Rng parent(seed);
    for (unsigned i = 0; i < trials; ++i) {
        Rng child = parent.child(i);
        futs.push_back(std::async(std::launch::async, [&ps, &cfg, child]() mutable {
            return compute_rational_point(ps, cfg, child);
        }));
    }
    std::exception_ptr first_error;
    for (unsigned i = 0; i < trials; ++i) {
        try {
            return futs[i].get();
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    std::rethrow_exception(first_error);
}

int cmd_solve(const CliOptions& o, std::ostream& out) {
    auto ps = parse_system(read_file(o.input));
    SolveConfig cfg = make_config(o);

    if (o.emit == "geosol" || o.emit == "fiber" || o.emit == "trace") {
        Rng rng(o.seed);
        auto solved = solve_to_lifting_fiber(ps, cfg, rng);
        if (o.emit == "geosol") {
            Json j = fiber_to_json(solved.fiber);
            j["command"] = "geosol";
            print_json(j, o, out);
            return 0;
        }
        if (o.emit == "trace") {
            Json j;
            j["schema"] = kSchemaTag;
            j["command"] = "solve";
            j["trace"] = trace_to_json(solved.state.trace, o.seed);
            print_json(j, o, out);
            return 0;
        }
        // emit == fiber: continue through the homotopy to the F_q-definable fiber
        for (unsigned t = 0; t < cfg.max_global_retries; ++t) {
            auto path = sample_homotopy_end(solved.state, rng);
            try {
                auto fq = deform_fiber_to_base_field(solved.state, solved.fiber, path);
                auto zf = change_primitive_element(solved.state, fq, path);
                Json j = fiber_to_json(zf);
                j["command"] = "fiber";
                print_json(j, o, out);
                return 0;
            } catch (const Error& e) {
                if (e.code() == Err::PathHitsDiscriminant || e.code() == Err::NotSeparating)
                    continue;
                throw;
            }
        }
        raise(Err::RetriesExhausted, "no valid homotopy path found");
    }
    if (o.emit == "oracle") {
        auto sols = oracle::enumerate_solutions(ps.polys, ps.base,
                                                FieldEmbedding::identity(ps.base));
        Json j;
        j["schema"] = kSchemaTag;
        j["command"] = "oracle";
        j["count"] = sols.points.size();
        Json pts = Json::array();
        for (auto& p : sols.points) {
            Json row = Json::array();
            for (auto& c : p) row.push_back(element_to_json(c));
            pts.push_back(row);
        }
        j["points"] = pts;
        print_json(j, o, out);
        return 0;
    }
    if (o.emit != "point") raise(Err::SyntaxError, "unknown emit target '" + o.emit + "'");

    auto res = solve_racing(ps, cfg, o.seed, o.parallel_trials);
    print_json(point_json(ps, res, o.seed), o, out);
    return 0;
}

int cmd_geosol(const CliOptions& o, std::ostream& out) {
    auto ps = parse_system(read_file(o.input));
    SolveConfig cfg = make_config(o);
    Rng rng(o.seed);
    auto solved = solve_to_lifting_fiber(ps, cfg, rng);
    Json j = fiber_to_json(solved.fiber);
    j["command"] = "geosol";
    print_json(j, o, out);
    return 0;
}

int cmd_fiber_check(const CliOptions& o, std::ostream& out) {
    auto ps = parse_system(read_file(o.input));
    Json fj = Json::parse(read_file(o.fiber_path));
    auto fiber = fiber_from_json(fj);
    // the fiber field must extend the system base field
    FieldEmbedding emb = fiber.K->same_as(*ps.base)
                             ? FieldEmbedding::identity(ps.base)
                             : [&] {
                                   Rng rng(o.seed);
                                   return FieldEmbedding::make(ps.base, fiber.K, rng);
                               }();
    auto rep = validate_fiber(fiber, ps.polys, emb);
    Json j;
    j["schema"] = kSchemaTag;
    j["command"] = "fiber-check";
    j["parametrization_residuals_zero"] = rep.parametrization_residuals_zero;
    j["q_squarefree"] = rep.q_squarefree;
    j["jacobian_invertible"] = rep.jacobian_invertible;
    j["pass"] = rep.pass();
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    print_json(j, o, out);
    return 0;
}

int cmd_oracle(const CliOptions& o, std::ostream& out) {
    CliOptions oo = o;
    oo.emit = "oracle";
    return cmd_solve(oo, out);
}

int cmd_bench(const CliOptions& o, std::ostream& out) {
    auto ps = parse_system(read_file(o.input));
    SolveConfig cfg = make_config(o);
    reset_op_counters();
    auto start = std::chrono::steady_clock::now();
    Rng rng(o.seed);
    auto res = compute_rational_point(ps, cfg, rng);
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    Json j = point_json(ps, res, o.seed);
    j["command"] = "bench";
    j["elapsed_ms"] = (double)elapsed / 1000.0;
    Json ops;
    ops["field_add"] = op_counters().add;
    ops["field_mul"] = op_counters().mul;
    ops["field_inv"] = op_counters().inv;
    j["operation_counts"] = ops;
    print_json(j, o, out);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"geometric-resolution solver for rational points over finite fields"};
    app.require_subcommand(1);

    CliOptions o;
    auto add_common = [&](CLI::App* sub, bool with_input = true) {
        if (with_input) sub->add_option("input", o.input, "system file")->required();
        sub->add_option("--seed", o.seed, "rng seed (default 0)");
        sub->add_option("--max-retries", o.max_retries, "global retry budget");
        sub->add_option("--parallel-trials", o.parallel_trials, "racing trial count");
        sub->add_option("--budget-lambda", o.budget_lambda, "per-stage lambda budget");
        sub->add_option("--budget-alpha", o.budget_alpha, "expansion center budget");
        sub->add_option("--budget-omega", o.budget_omega, "slice direction budget");
        sub->add_option("--budget-a", o.budget_a, "curve point trials (0: curve degree)");
        sub->add_option("--ext-degree", o.ext_degree,
                        "override the working field extension degree");
        sub->add_option("--format", o.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    auto* solve = app.add_subcommand("solve", "compute a rational point");
    add_common(solve);
    solve->add_option("--emit", o.emit, "point|geosol|fiber|trace|oracle")
        ->check(CLI::IsMember({"point", "geosol", "fiber", "trace", "oracle"}));

    auto* geosol = app.add_subcommand("geosol", "emit the lifting fiber geometric solution");
    add_common(geosol);

    auto* fiber_check = app.add_subcommand("fiber-check", "validate a fiber json");
    add_common(fiber_check);
    fiber_check->add_option("fiber", o.fiber_path, "fiber json file")->required();

    auto* orc = app.add_subcommand("oracle", "brute-force enumeration");
    add_common(orc);

    auto* bench = app.add_subcommand("bench", "timing and operation counts");
    add_common(bench);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << std::flush;
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(o, out);
        if (geosol->parsed()) return cmd_geosol(o, out);
        if (fiber_check->parsed()) return cmd_fiber_check(o, out);
        if (orc->parsed()) return cmd_oracle(o, out);
        if (bench->parsed()) return cmd_bench(o, out);
        err << "no subcommand\n";
        return 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace ffk
