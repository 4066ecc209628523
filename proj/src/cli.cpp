#include "stabkit/cli.hpp"

#include "stabkit/error.hpp"
#include "stabkit/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace stabkit::cli {

namespace {

// Splits on commas that sit outside (), {} and [].
std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '{' || c == '[')
            ++depth;
        else if (c == ')' || c == '}' || c == ']')
            --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

Element parse_element_arg(const GroupDescriptor& g, const std::string& text) {
    if (text.rfind("int:", 0) == 0 || text.rfind("dyadic:", 0) == 0 || text.rfind("bits:", 0) == 0)
        return element_from_text(g, text);
    // Compact forms: "5", "3/2", "(1,0)", "{1,2}".
    switch (g.id) {
    case GroupId::BinarySeq:
        if (text.size() >= 2 && text.front() == '{' && text.back() == '}')
            return element_from_text(g, "bits:" + text);
        fail(ErrorCode::ParseError, "BinarySeq elements look like {1,2}");
    case GroupId::IntLattice:
    case GroupId::DyadicLattice: {
        std::string body = text;
        if (!body.empty() && body.front() == '(' && body.back() == ')')
            body = body.substr(1, body.size() - 2);
        std::string prefix = g.id == GroupId::IntLattice ? "int:[" : "dyadic:[";
        return element_from_text(g, prefix + body + "]");
    }
    }
    fail(ErrorCode::ParseError, "bad element '" + text + "'");
}

CodomainValue parse_value_arg(const TestFunction& f, const std::string& text) {
    if (f.codomain() == CodomainKind::SameGroup)
        return CodomainValue(parse_element_arg(f.domain(), text));
    return CodomainValue(parse_rational(text));
}

std::map<std::string, std::string> parse_keyvals(const std::string& text) {
    std::map<std::string, std::string> out;
    if (text.empty())
        return out;
    for (const auto& part : split_top_level(text)) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ParseError, "expected key=value in '" + part + "'");
        out[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return out;
}

TestFunction parse_function_spec(const GroupDescriptor& g, const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    auto kv = parse_keyvals(colon == std::string::npos ? "" : spec.substr(colon + 1));
    auto want = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            fail(ErrorCode::ParseError, "function '" + name + "' needs " + key + "=...");
        return it->second;
    };

    if (name == "zero") {
        auto it = kv.find("codomain");
        CodomainKind kind = (it != kv.end() && it->second == "group") ? CodomainKind::SameGroup
                                                                      : CodomainKind::Scalar;
        return make_zero(g, kind);
    }
    if (name == "constant") {
        const std::string& v = want("value");
        if (!v.empty() && (v.front() == '{' || v.front() == '(' || v.rfind("int:", 0) == 0 ||
                           v.rfind("dyadic:", 0) == 0 || v.rfind("bits:", 0) == 0))
            return make_constant(g, CodomainValue(parse_element_arg(g, v)));
        return make_constant(g, CodomainValue(parse_rational(v)));
    }
    if (name == "additive")
        return make_additive(parse_rational(want("slope")), g);
    if (name == "identity")
        return make_identity(g);
    if (name == "extremal-cauchy")
        return make_extremal_cauchy(parse_rational(want("eps")),
                                    parse_element_arg(g, want("x0")));
    if (name == "extremal-jensen")
        return make_extremal_jensen(parse_rational(want("eps")), parse_element_arg(g, want("x0")));
    if (name == "hyper-counterexample")
        return make_hyper_counterexample(parse_element_arg(g, want("a")));
    fail(ErrorCode::ParseError, "unknown function '" + name + "'");
}

WeightFunction parse_weight_spec(const std::string& spec) {
    if (spec == "linear")
        return WeightFunction::linear();
    if (spec == "quadratic")
        return WeightFunction::quadratic();
    if (spec.rfind("affine:", 0) == 0) {
        auto parts = split_top_level(spec.substr(7));
        if (parts.size() != 2)
            fail(ErrorCode::ParseError, "affine weight looks like affine:c0,slope");
        return WeightFunction::affine_floor(parse_rational(parts[0]), parse_rational(parts[1]));
    }
    fail(ErrorCode::ParseError, "unknown weight '" + spec + "'");
}

struct WindowArgs {
    std::string range; // "lo..hi" or a single symmetric radius
    std::string step = "1";
    unsigned support_max = 0;

    Window build(const GroupDescriptor& g) const {
        if (g.id == GroupId::BinarySeq) {
            if (support_max == 0)
                fail(ErrorCode::ParseError, "BinarySeq windows need --support-max");
            return Window::supports(support_max);
        }
        if (range.empty())
            fail(ErrorCode::ParseError, "lattice windows need --window");
        auto dots = range.find("..");
        if (dots == std::string::npos) {
            Rational radius = parse_rational(range);
            return Window::symmetric(radius, parse_rational(step));
        }
        return Window::box(parse_rational(range.substr(0, dots)),
                           parse_rational(range.substr(dots + 2)), parse_rational(step));
    }
};

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& part : split_top_level(text))
        if (!part.empty())
            out.push_back(parse_rational(part));
    return out;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        fail(ErrorCode::InvalidArgument, "cannot open '" + out_path + "' for writing");
    file << text;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("STABKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "STABKIT_SEED is not a number");
        }
    }
    return 0;
}

int run_demo_binseq(std::ostream& out) {
    GroupDescriptor g = GroupDescriptor::binary_seq();
    TestFunction f = make_hyper_counterexample(bits_elem({1}));
    out << "group: eventually-zero binary sequences, harmonic norm\n";
    out << "function: f(x) = x for x != 0, f(0) = {1}\n\n";

    WeightFunction phi = WeightFunction::linear();
    std::vector<Rational> shells = {Rational(1, 2), Rational(1), Rational(3, 2)};
    ScanReport profile =
        weighted_profile(f, phi, Equation::Cauchy, Window::supports(8), shells);
    out << "weighted defect profile, weight phi(t) = t, supports within {1..8}:\n";
    for (const auto& shell : profile.shells)
        out << "  shell r >= " << format_rational(shell.r) << ": sup = "
            << format_rational(shell.sup) << "\n";

    Element w = bits_elem({3});
    out << "\nplain defect at ({3},{3}): " << format_rational(cauchy_defect(f, w, w)) << "\n";

    out << "doubled elements: twice({2,7}) = " << to_text(twice(bits_elem({2, 7}))) << "\n";
    try {
        pick_hyper_cauchy_witnesses(g, w, w, 1, 1);
        out << "unexpected: hyper witnesses exist\n";
        return 1;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DoublingBounded)
            throw;
        out << "hyper witness selection: " << e.what() << "\n";
    }
    out << "\nweighted sups stay at zero while the plain defect reaches "
        << format_rational(cauchy_defect(f, w, w))
        << ": bounded doubling blocks the hyperstability mechanism.\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact stability experiments for Cauchy and Jensen equations"};
    app.require_subcommand(1);

    // scan ------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "max defect and shell sups over a window");
    std::string sc_group, sc_function, sc_equation, sc_shells, sc_weight, sc_format = "csv",
                sc_out;
    WindowArgs sc_window;
    std::vector<std::string> sc_overrides;
    unsigned sc_jobs = 1;
    scan->add_option("--group", sc_group)->required();
    scan->add_option("--function", sc_function)->required();
    scan->add_option("--equation", sc_equation)->required();
    scan->add_option("--window", sc_window.range);
    scan->add_option("--step", sc_window.step);
    scan->add_option("--support-max", sc_window.support_max);
    scan->add_option("--shells", sc_shells);
    scan->add_option("--weight", sc_weight);
    scan->add_option("--format", sc_format)->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--jobs", sc_jobs)->check(CLI::Range(1u, 64u));
    scan->add_option("--override", sc_overrides);
    scan->add_option("--out", sc_out);

    // certify ----------------------------------------------------------
    auto* certify = app.add_subcommand("certify", "issue or verify a stability certificate");
    std::string ct_group, ct_function, ct_equation = "cauchy", ct_r, ct_eta, ct_x, ct_y, ct_out,
                ct_verify, ct_format = "json";
    std::vector<std::string> ct_overrides;
    certify->add_option("--group", ct_group);
    certify->add_option("--function", ct_function);
    certify->add_option("--equation", ct_equation)->check(CLI::IsMember({"cauchy", "jensen"}));
    certify->add_option("--r", ct_r);
    certify->add_option("--eta", ct_eta);
    certify->add_option("--x", ct_x);
    certify->add_option("--y", ct_y);
    certify->add_option("--override", ct_overrides);
    certify->add_option("--format", ct_format)->check(CLI::IsMember({"json"}));
    certify->add_option("--out", ct_out);
    certify->add_option("--verify", ct_verify, "re-check a certificate file instead of issuing");
    WindowArgs ct_window;
    std::string ct_shells;
    bool ct_auto_budget = false;
    certify->add_flag("--auto-budget", ct_auto_budget,
                      "derive (r, eta) from a window scan over --shells");
    certify->add_option("--window", ct_window.range);
    certify->add_option("--step", ct_window.step);
    certify->add_option("--support-max", ct_window.support_max);
    certify->add_option("--shells", ct_shells);

    // hyper -------------------------------------------------------------
    auto* hyper = app.add_subcommand("hyper", "issue a weighted hyperstability certificate");
    std::string hy_group, hy_function, hy_equation = "cauchy", hy_r, hy_K, hy_phi, hy_eps, hy_x,
                hy_y, hy_out, hy_format = "json";
    std::vector<std::string> hy_overrides;
    hyper->add_option("--group", hy_group)->required();
    hyper->add_option("--function", hy_function)->required();
    hyper->add_option("--equation", hy_equation)->check(CLI::IsMember({"cauchy", "jensen"}));
    hyper->add_option("--r", hy_r)->required();
    hyper->add_option("--K", hy_K)->required();
    hyper->add_option("--phi", hy_phi)->required();
    hyper->add_option("--eps", hy_eps)->required();
    hyper->add_option("--x", hy_x)->required();
    hyper->add_option("--y", hy_y)->required();
    hyper->add_option("--override", hy_overrides);
    hyper->add_option("--format", hy_format)->check(CLI::IsMember({"json"}));
    hyper->add_option("--out", hy_out);

    // sharpness ----------------------------------------------------------
    auto* sharp = app.add_subcommand("sharpness", "adversarial search for the worst defect");
    std::string sh_group, sh_equation, sh_eps, sh_shell_r, sh_grid_min, sh_grid_max, sh_grid_step,
                sh_mode = "auto", sh_out, sh_format = "json";
    WindowArgs sh_window;
    unsigned sh_max_support = 3, sh_restarts = 4, sh_iters = 400;
    std::optional<std::uint64_t> sh_seed;
    sharp->add_option("--group", sh_group)->required();
    sharp->add_option("--equation", sh_equation)
        ->check(CLI::IsMember({"cauchy", "jensen-quad"}))
        ->required();
    sharp->add_option("--eps", sh_eps)->required();
    sharp->add_option("--window", sh_window.range);
    sharp->add_option("--step", sh_window.step);
    sharp->add_option("--support-max", sh_window.support_max);
    sharp->add_option("--shell-r", sh_shell_r)->required();
    sharp->add_option("--grid-min", sh_grid_min);
    sharp->add_option("--grid-max", sh_grid_max);
    sharp->add_option("--grid-step", sh_grid_step);
    sharp->add_option("--max-support", sh_max_support);
    sharp->add_option("--mode", sh_mode)->check(CLI::IsMember({"auto", "exhaustive", "hillclimb"}));
    sharp->add_option("--restarts", sh_restarts);
    sharp->add_option("--iters", sh_iters);
    sharp->add_option("--seed", sh_seed);
    sharp->add_option("--format", sh_format)->check(CLI::IsMember({"json"}));
    sharp->add_option("--out", sh_out);

    // verify --------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "re-check a certificate file bit-exactly");
    std::string vf_file;
    verify->add_option("file", vf_file)->required();

    // demo ------------------------------------------------------------------
    auto* demo = app.add_subcommand("demo", "guided walkthroughs");
    std::string demo_name;
    demo->add_option("name", demo_name)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (scan->parsed()) {
            GroupDescriptor g = group_from_text(sc_group);
            TestFunction f = parse_function_spec(g, sc_function);
            for (const auto& text : sc_overrides) {
                auto eq_pos = text.find('=');
                if (eq_pos == std::string::npos)
                    fail(ErrorCode::ParseError, "--override wants ELEMENT=VALUE");
                TestFunction::OverrideMap extra;
                Element p = parse_element_arg(g, text.substr(0, eq_pos));
                extra.insert_or_assign(p, parse_value_arg(f, text.substr(eq_pos + 1)));
                f = perturb(f, extra);
            }
            Equation eq = parse_equation(sc_equation);
            Window window = sc_window.build(g);
            std::vector<Rational> shells = parse_rational_list(sc_shells);
            ScanReport report =
                sc_weight.empty()
                    ? sup_defect_scan(f, eq, window, shells, sc_jobs)
                    : weighted_profile(f, parse_weight_spec(sc_weight), eq, window, shells,
                                       sc_jobs);
            emit(sc_format == "csv" ? to_csv(report) : to_json(report).dump(2) + "\n", sc_out,
                 out);
            return 0;
        }

        if (certify->parsed()) {
            if (!ct_verify.empty()) {
                std::ifstream file(ct_verify);
                if (!file)
                    fail(ErrorCode::InvalidArgument, "cannot read '" + ct_verify + "'");
                Json j = Json::parse(file);
                verify_certificate(j);
                out << "certificate verified\n";
                return 0;
            }
            bool manual_budget = !ct_r.empty() && !ct_eta.empty();
            if (ct_group.empty() || ct_function.empty() || ct_x.empty() || ct_y.empty() ||
                (!manual_budget && !ct_auto_budget)) {
                err << "usage error: certify needs --group, --function, --x, --y and either "
                       "--r/--eta or --auto-budget\n";
                return 2;
            }
            GroupDescriptor g = group_from_text(ct_group);
            TestFunction f = parse_function_spec(g, ct_function);
            for (const auto& text : ct_overrides) {
                auto eq_pos = text.find('=');
                if (eq_pos == std::string::npos)
                    fail(ErrorCode::ParseError, "--override wants ELEMENT=VALUE");
                TestFunction::OverrideMap extra;
                extra.insert_or_assign(parse_element_arg(g, text.substr(0, eq_pos)),
                                       parse_value_arg(f, text.substr(eq_pos + 1)));
                f = perturb(f, extra);
            }
            StabilityBudget budget =
                manual_budget
                    ? StabilityBudget(parse_rational(ct_r), parse_rational(ct_eta))
                    : budget_from_scan(f,
                                       ct_equation == "cauchy" ? Equation::Cauchy
                                                               : Equation::JensenPlain,
                                       ct_window.build(g), parse_rational_list(ct_shells));
            Element x = parse_element_arg(g, ct_x);
            Element y = parse_element_arg(g, ct_y);
            Json j = ct_equation == "cauchy" ? to_json(certify_cauchy(f, budget, x, y))
                                             : to_json(certify_jensen(f, budget, x, y));
            emit(j.dump(2) + "\n", ct_out, out);
            return 0;
        }

        if (hyper->parsed()) {
            GroupDescriptor g = group_from_text(hy_group);
            TestFunction f = parse_function_spec(g, hy_function);
            for (const auto& text : hy_overrides) {
                auto eq_pos = text.find('=');
                if (eq_pos == std::string::npos)
                    fail(ErrorCode::ParseError, "--override wants ELEMENT=VALUE");
                TestFunction::OverrideMap extra;
                extra.insert_or_assign(parse_element_arg(g, text.substr(0, eq_pos)),
                                       parse_value_arg(f, text.substr(eq_pos + 1)));
                f = perturb(f, extra);
            }
            bool cauchy = hy_equation == "cauchy";
            HyperBudget budget(parse_rational(hy_r), parse_rational(hy_K),
                               parse_weight_spec(hy_phi), cauchy ? 5 : 4);
            Element x = parse_element_arg(g, hy_x);
            Element y = parse_element_arg(g, hy_y);
            Rational eps = parse_rational(hy_eps);
            Json j = cauchy ? to_json(certify_hyper_cauchy(f, budget, x, y, eps))
                            : to_json(certify_hyper_jensen(f, budget, x, y, eps));
            emit(j.dump(2) + "\n", hy_out, out);
            return 0;
        }

        if (sharp->parsed()) {
            GroupDescriptor g = group_from_text(sh_group);
            SearchConfig config;
            if (!sh_grid_min.empty())
                config.grid_min = parse_rational(sh_grid_min);
            if (!sh_grid_max.empty())
                config.grid_max = parse_rational(sh_grid_max);
            if (!sh_grid_step.empty())
                config.grid_step = parse_rational(sh_grid_step);
            config.max_support = sh_max_support;
            config.restarts = sh_restarts;
            config.iterations = sh_iters;
            config.seed = resolve_seed(sh_seed);
            config.mode = sh_mode == "exhaustive"  ? SearchConfig::Mode::Exhaustive
                          : sh_mode == "hillclimb" ? SearchConfig::Mode::HillClimb
                                                   : SearchConfig::Mode::Auto;
            SearchResult result =
                adversarial_sharpness_search(g, parse_equation(sh_equation),
                                             parse_rational(sh_eps), sh_window.build(g),
                                             parse_rational(sh_shell_r), config);
            emit(to_json(result).dump(2) + "\n", sh_out, out);
            return 0;
        }

        if (verify->parsed()) {
            std::ifstream file(vf_file);
            if (!file)
                fail(ErrorCode::InvalidArgument, "cannot read '" + vf_file + "'");
            Json j = Json::parse(file, nullptr, true);
            verify_certificate(j);
            out << "certificate verified\n";
            return 0;
        }

        if (demo->parsed()) {
            if (demo_name == "binseq-counterexample")
                return run_demo_binseq(out);
            fail(ErrorCode::ParseError, "unknown demo '" + demo_name + "' (try binseq-counterexample)");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace stabkit::cli
