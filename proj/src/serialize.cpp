#include "stabkit/serialize.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

std::string group_to_text(const GroupDescriptor& g) {
    switch (g.id) {
    case GroupId::IntLattice:
        return "int:" + std::to_string(g.dim);
    case GroupId::DyadicLattice:
        return "dyadic:" + std::to_string(g.dim);
    case GroupId::BinarySeq:
        return "binseq";
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

GroupDescriptor group_from_text(const std::string& text) {
    if (text == "binseq")
        return GroupDescriptor::binary_seq();
    auto parse_dim = [&](const std::string& s) {
        try {
            unsigned long dim = std::stoul(s);
            if (dim == 0 || dim > 8)
                fail(ErrorCode::ParseError, "lattice dimension must be in 1..8");
            return static_cast<unsigned>(dim);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad group spec '" + text + "'");
        }
    };
    if (text.rfind("int:", 0) == 0)
        return GroupDescriptor::int_lattice(parse_dim(text.substr(4)));
    if (text.rfind("dyadic:", 0) == 0)
        return GroupDescriptor::dyadic_lattice(parse_dim(text.substr(7)));
    fail(ErrorCode::ParseError, "unknown group spec '" + text + "'");
}

Json to_json(const CodomainValue& v) {
    if (v.is_scalar())
        return Json{{"scalar", format_rational(v.scalar())}};
    return Json{{"element", to_text(v.element())}};
}

CodomainValue codomain_value_from_json(const GroupDescriptor& g, const Json& j) {
    if (j.contains("scalar"))
        return CodomainValue(parse_rational(j.at("scalar").get<std::string>()));
    if (j.contains("element"))
        return CodomainValue(element_from_text(g, j.at("element").get<std::string>()));
    fail(ErrorCode::ParseError, "codomain value needs 'scalar' or 'element'");
}

Json to_json(const TestFunction& f) {
    Json base;
    std::visit(
        [&](const auto& rule) {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, BaseZero>)
                base = Json{{"kind", "zero"}};
            else if constexpr (std::is_same_v<T, BaseConstant>)
                base = Json{{"kind", "constant"}, {"value", to_json(rule.value)}};
            else if constexpr (std::is_same_v<T, BaseLinearScalar>)
                base = Json{{"kind", "linear"}, {"slope", format_rational(rule.slope)}};
            else
                base = Json{{"kind", "identity"}};
        },
        f.base());
    Json overrides = Json::array();
    for (const auto& [p, v] : f.overrides())
        overrides.push_back(Json::array({to_text(p), to_json(v)}));
    return Json{{"domain", group_to_text(f.domain())},
                {"codomain", f.codomain() == CodomainKind::Scalar ? "scalar" : "group"},
                {"base", std::move(base)},
                {"overrides", std::move(overrides)}};
}

TestFunction function_from_json(const Json& j) {
    GroupDescriptor g = group_from_text(j.at("domain").get<std::string>());
    std::string codomain_text = j.at("codomain").get<std::string>();
    if (codomain_text != "scalar" && codomain_text != "group")
        fail(ErrorCode::ParseError, "codomain must be 'scalar' or 'group'");
    CodomainKind codomain =
        codomain_text == "scalar" ? CodomainKind::Scalar : CodomainKind::SameGroup;

    const Json& base_json = j.at("base");
    std::string kind = base_json.at("kind").get<std::string>();
    BaseRule base;
    if (kind == "zero")
        base = BaseZero{};
    else if (kind == "constant")
        base = BaseConstant{codomain_value_from_json(g, base_json.at("value"))};
    else if (kind == "linear")
        base = BaseLinearScalar{parse_rational(base_json.at("slope").get<std::string>())};
    else if (kind == "identity")
        base = BaseIdentity{};
    else
        fail(ErrorCode::ParseError, "unknown base kind '" + kind + "'");

    TestFunction::OverrideMap overrides;
    for (const Json& entry : j.at("overrides")) {
        if (!entry.is_array() || entry.size() != 2)
            fail(ErrorCode::ParseError, "override entries are [element, value] pairs");
        overrides.insert_or_assign(element_from_text(g, entry.at(0).get<std::string>()),
                                   codomain_value_from_json(g, entry.at(1)));
    }
    return TestFunction(g, codomain, std::move(base), std::move(overrides));
}

Json to_json(const WeightFunction& phi) {
    switch (phi.kind()) {
    case WeightFunction::Kind::Linear:
        return Json{{"kind", "linear"}};
    case WeightFunction::Kind::Quadratic:
        return Json{{"kind", "quadratic"}};
    case WeightFunction::Kind::AffineFloor:
        return Json{{"kind", "affine-floor"},
                    {"c0", format_rational(phi.c0())},
                    {"slope", format_rational(phi.slope())}};
    }
    fail(ErrorCode::InvalidArgument, "unknown weight kind");
}

WeightFunction weight_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear")
        return WeightFunction::linear();
    if (kind == "quadratic")
        return WeightFunction::quadratic();
    if (kind == "affine-floor")
        return WeightFunction::affine_floor(parse_rational(j.at("c0").get<std::string>()),
                                            parse_rational(j.at("slope").get<std::string>()));
    fail(ErrorCode::ParseError, "unknown weight kind '" + kind + "'");
}

namespace {

Json argmax_json(const std::optional<std::pair<Element, Element>>& at) {
    if (!at)
        return nullptr;
    return Json{{"x", to_text(at->first)}, {"y", to_text(at->second)}};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

Json to_json(const ScanReport& report) {
    Json j{{"equation", to_string(report.equation)},
           {"window", report.window},
           {"weight", report.weight ? to_json(*report.weight) : Json(nullptr)},
           {"max", Json{{"value", format_rational(report.max_defect)},
                        {"argmax", argmax_json(report.argmax)}}},
           {"shells", Json::array()}};
    for (const auto& shell : report.shells)
        j["shells"].push_back(Json{{"r", format_rational(shell.r)},
                                   {"sup", format_rational(shell.sup)},
                                   {"argmax", argmax_json(shell.argmax)}});
    return j;
}

std::string to_csv(const ScanReport& report) {
    std::string out = "kind,r,value,x,y\n";
    auto pair_cols = [](const std::optional<std::pair<Element, Element>>& at) {
        if (!at)
            return std::string(",");
        return csv_quote(to_text(at->first)) + "," + csv_quote(to_text(at->second));
    };
    out += "max,," + format_rational(report.max_defect) + "," + pair_cols(report.argmax) + "\n";
    for (const auto& shell : report.shells)
        out += "shell," + format_rational(shell.r) + "," + format_rational(shell.sup) + "," +
               pair_cols(shell.argmax) + "\n";
    return out;
}

namespace {

Json budget_json(const StabilityBudget& budget) {
    return Json{{"r", format_rational(budget.r)}, {"eta", format_rational(budget.eta)}};
}

Json terms_json(const std::vector<ChainTerm>& terms) {
    Json out = Json::array();
    for (const auto& t : terms)
        out.push_back(Json{{"left", to_text(t.left)},
                           {"right", to_text(t.right)},
                           {"description", t.description},
                           {"value", format_rational(t.value)},
                           {"min_norm_ok", t.min_norm_ok}});
    return out;
}

Json hyper_terms_json(const std::vector<HyperChainTerm>& terms) {
    Json out = Json::array();
    for (const auto& t : terms)
        out.push_back(Json{{"left", to_text(t.left)},
                           {"right", to_text(t.right)},
                           {"description", t.description},
                           {"value", format_rational(t.value)},
                           {"weighted", format_rational(t.weighted)},
                           {"min_norm_ok", t.min_norm_ok},
                           {"diff_norm_ok", t.diff_norm_ok},
                           {"weighted_ok", t.weighted_ok}});
    return out;
}

} // namespace

Json to_json(const CauchyCertificate& cert) {
    return Json{{"kind", "cauchy-certificate"},
                {"equation", "cauchy"},
                {"function", to_json(cert.function)},
                {"budget", budget_json(cert.budget)},
                {"x", to_text(cert.x)},
                {"y", to_text(cert.y)},
                {"witnesses", Json{{"u", to_text(cert.u)}, {"v", to_text(cert.v)}}},
                {"terms", terms_json(cert.terms)},
                {"bound", format_rational(cert.bound)},
                {"defect", format_rational(cert.defect_at_xy)},
                {"side_conditions_ok", cert.side_conditions_ok},
                {"sound", cert.sound}};
}

Json to_json(const JensenCertificate& cert) {
    return Json{{"kind", "jensen-certificate"},
                {"equation", "jensen-quad"},
                {"function", to_json(cert.function)},
                {"budget", budget_json(cert.budget)},
                {"x", to_text(cert.x)},
                {"y", to_text(cert.y)},
                {"witnesses", Json{{"u", to_text(cert.u)}}},
                {"terms", terms_json(cert.terms)},
                {"bound", format_rational(cert.bound)},
                {"defect", format_rational(cert.defect_at_xy)},
                {"side_conditions_ok", cert.side_conditions_ok},
                {"sound", cert.sound}};
}

Json to_json(const HyperCertificate& cert) {
    bool cauchy = cert.equation == Equation::Cauchy;
    Json witnesses = Json{{"u", to_text(cert.u)}};
    if (cert.v)
        witnesses["v"] = to_text(*cert.v);
    return Json{{"kind", cauchy ? "hyper-cauchy-certificate" : "hyper-jensen-certificate"},
                {"equation", cauchy ? "cauchy" : "jensen-quad"},
                {"function", to_json(cert.function)},
                {"budget", Json{{"r", format_rational(cert.budget.r)},
                                {"K", format_rational(cert.budget.K)},
                                {"phi", to_json(cert.budget.phi)},
                                {"term_count", cert.budget.term_count}}},
                {"epsilon", format_rational(cert.epsilon)},
                {"R", format_rational(cert.threshold_R)},
                {"x", to_text(cert.x)},
                {"y", to_text(cert.y)},
                {"witnesses", std::move(witnesses)},
                {"terms", hyper_terms_json(cert.terms)},
                {"bound", format_rational(cert.bound)},
                {"defect", format_rational(cert.defect_at_xy)},
                {"side_conditions_ok", cert.side_conditions_ok},
                {"diff_conditions_ok", cert.diff_conditions_ok},
                {"budget_respected", cert.budget_respected},
                {"sound", cert.sound}};
}

Json to_json(const SearchResult& result) {
    return Json{{"equation", to_string(result.objective)},
                {"best_sup", format_rational(result.best_sup)},
                {"mode", result.exhaustive ? "exhaustive" : "hill-climb"},
                {"candidates_tried", result.candidates_tried},
                {"best_function", to_json(result.best)}};
}

namespace {

[[noreturn]] void mismatch(const std::string& what) {
    fail(ErrorCode::VerifyFailed, "certificate does not re-derive: " + what);
}

void compare_json(const Json& recorded, const Json& rebuilt) {
    if (recorded == rebuilt)
        return;
    if (recorded.is_object() && rebuilt.is_object()) {
        for (const auto& [key, value] : rebuilt.items()) {
            if (!recorded.contains(key))
                mismatch("missing field '" + key + "'");
            if (recorded.at(key) != value)
                mismatch("field '" + key + "' differs");
        }
        mismatch("extra fields present");
    }
    mismatch("content differs");
}

} // namespace

void verify_certificate(const Json& j) {
    std::string kind;
    try {
        kind = j.at("kind").get<std::string>();
        TestFunction f = function_from_json(j.at("function"));
        Element x = element_from_text(f.domain(), j.at("x").get<std::string>());
        Element y = element_from_text(f.domain(), j.at("y").get<std::string>());

        if (kind == "cauchy-certificate" || kind == "jensen-certificate") {
            const Json& b = j.at("budget");
            StabilityBudget budget(parse_rational(b.at("r").get<std::string>()),
                                   parse_rational(b.at("eta").get<std::string>()));
            Element u = element_from_text(f.domain(), j.at("witnesses").at("u").get<std::string>());
            Json rebuilt;
            if (kind == "cauchy-certificate") {
                Element v =
                    element_from_text(f.domain(), j.at("witnesses").at("v").get<std::string>());
                rebuilt = to_json(certify_cauchy_with(f, budget, x, y, u, v));
            } else {
                rebuilt = to_json(certify_jensen_with(f, budget, x, y, u));
            }
            compare_json(j, rebuilt);
            return;
        }
        if (kind == "hyper-cauchy-certificate" || kind == "hyper-jensen-certificate") {
            const Json& b = j.at("budget");
            HyperBudget budget(parse_rational(b.at("r").get<std::string>()),
                               parse_rational(b.at("K").get<std::string>()),
                               weight_from_json(b.at("phi")), b.at("term_count").get<unsigned>());
            Rational eps = parse_rational(j.at("epsilon").get<std::string>());
            Element u = element_from_text(f.domain(), j.at("witnesses").at("u").get<std::string>());
            Json rebuilt;
            if (kind == "hyper-cauchy-certificate") {
                Element v =
                    element_from_text(f.domain(), j.at("witnesses").at("v").get<std::string>());
                rebuilt = to_json(certify_hyper_cauchy_with(f, budget, x, y, eps, u, v));
            } else {
                rebuilt = to_json(certify_hyper_jensen_with(f, budget, x, y, eps, u));
            }
            compare_json(j, rebuilt);
            return;
        }
        fail(ErrorCode::VerifyFailed, "unknown certificate kind '" + kind + "'");
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorCode::VerifyFailed, std::string("malformed certificate: ") + e.what());
    }
}

} // namespace stabkit
