#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kmgrowth/kmgrowth.hpp"

using namespace kmgrowth;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Output {
    json payload = json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> text;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string normalize_label(std::string label) {
    if (label.find(':') == std::string::npos) label += ":r1";
    return label;
}

std::shared_ptr<const AlgebraSpec> make_spec(const std::string& label, const std::string& flavor, const std::string& level) {
    Scalar lam = level.empty() ? Scalar(0) : Scalar::parse(level);
    return AlgebraSpec::make(normalize_label(label), parse_flavor(flavor), lam);
}

json trace_json(const ReductionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"op", s.kind == TraceStep::Kind::Bracket ? "bracket" : "multiply"},
                         {"with", format_element(s.operand)}});
    return {{"generator", format_element(t.generator)}, {"steps", steps}};
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const std::string& format, const std::string& command, const Output& out) {
    if (format == "json") {
        json doc = {{"command", command}, {"payload", out.payload}, {"version", kVersion}};
        std::cout << doc.dump(2) << "\n";
    } else if (format == "csv") {
        if (out.header.empty()) {
            std::cout << "key,value\n";
            for (const auto& [k, v] : out.payload.items())
                std::cout << csv_cell(k) << "," << csv_cell(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            return;
        }
        for (std::size_t i = 0; i < out.header.size(); ++i) std::cout << (i ? "," : "") << csv_cell(out.header[i]);
        std::cout << "\n";
        for (const auto& row : out.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_cell(row[i]);
            std::cout << "\n";
        }
    } else {
        for (const auto& line : out.text) std::cout << line << "\n";
    }
}

std::string positivity_name(Positivity p) {
    switch (p) {
        case Positivity::Positive: return "+";
        case Positivity::Negative: return "-";
        case Positivity::Cartan: return "0";
    }
    return "?";
}

Output cmd_basis(const std::string& label) {
    auto b = EquivariantBasis::from_label(normalize_label(label));
    Output out;
    out.header = {"index", "weight", "sign", "key", "height", "element"};
    json rows = json::array();
    for (int i = 0; i < b->dim(); ++i) {
        const auto& e = (*b)[i];
        std::vector<std::string> row{"b" + std::to_string(i + 1), std::to_string(e.weight), positivity_name(e.positivity),
                                     std::to_string(e.key), std::to_string(e.height), b->describe(i)};
        rows.push_back({{"index", i + 1}, {"weight", e.weight}, {"sign", row[2]}, {"key", e.key}, {"height", e.height},
                        {"element", row[5]}});
        out.text.push_back(row[0] + "  weight " + row[1] + "  sign " + row[2] + "  key " + row[3] + "  " + row[5]);
        out.rows.push_back(std::move(row));
    }
    for (int s = 0; s < b->order(); ++s) {
        std::string chain;
        for (int i : b->component(s)) chain += (chain.empty() ? "" : " < ") + ("b" + std::to_string(i + 1));
        out.text.push_back("B_" + std::to_string(s) + ": " + chain);
    }
    out.payload = {{"algebra", b->twist().label()}, {"dim", b->dim()}, {"basis", rows}};
    return out;
}

Output cmd_bracket(const AlgebraSpec& spec, const std::string& x, const std::string& y) {
    Element ex = parse_element_s(spec, x), ey = parse_element_s(spec, y);
    for (const Element* e : {&ex, &ey})
        for (const auto& [m, c] : e->terms())
            if (m.size() != 1) throw UsageError("bracket arguments must be combinations of single letters");
    Element r = poisson_bracket(spec, PoissonMode::SLambda, ex, ey);
    Output out;
    out.payload = {{"result", format_element(r)}};
    out.text = {format_element(r)};
    return out;
}

Output cmd_straighten(const AlgebraSpec& spec, const std::string& text) {
    Element e = parse_element_u(spec, text);
    Output out;
    out.payload = {{"result", format_element(e)}};
    out.text = {format_element(e)};
    return out;
}

Output cmd_leading_term(const AlgebraSpec& spec, const std::string& text, const std::string& order, const std::string& ring) {
    Element e = ring == "U" ? parse_element_u(spec, text) : parse_element_s(spec, text);
    MonomialOrder o = order == "revlex" ? MonomialOrder::RevLex : MonomialOrder::Lex;
    Monomial lt = leading_term(e, o);
    Output out;
    out.payload = {{"leading_term", format_monomial(lt)}, {"coefficient", e.coefficient(lt).str()}, {"order", order}};
    out.text = {format_monomial(lt)};
    return out;
}

Output cmd_reduce(const std::string& label, const std::string& gen, const std::string& target, bool uniform) {
    auto basis = EquivariantBasis::from_label(normalize_label(label));
    ReductionEngine eng(basis);
    Element f = parse_element_s(eng.spec(), gen);
    Monomial m = parse_monomial(eng.spec(), target);
    Output out;
    int n = 0;
    if (uniform) {
        n = eng.uniform_threshold(f);
        if (!m.empty() && m.front().exp <= n) throw ThresholdNotMet(n, m.front().exp);
    }
    ConstructResult r = eng.construct_h_m(f, m);
    if (!uniform) n = r.threshold;
    out.payload = {{"h_m", format_element(r.h)}, {"leading_term", format_monomial(leading_term(r.h))},
                   {"trace", trace_json(r.trace)}, {"n", n}, {"ell", r.ell}, {"uniform", uniform}};
    out.text = {"H_M = " + format_element(r.h), "LT = " + format_monomial(leading_term(r.h)),
                "n = " + std::to_string(n) + (uniform ? " (uniform)" : " (per class)"), "ell = " + std::to_string(r.ell),
                "trace steps = " + std::to_string(r.trace.steps.size())};
    return out;
}

Output cmd_project(const std::string& label, const std::string& level, const std::string& elem) {
    auto spec = make_spec(label, "affine", level);
    Element f = parse_element_s(*spec, elem);
    ProjectResult r = project_to_derived(*spec, f);
    Output out;
    out.payload = {{"h", format_element(r.h)}, {"trace", trace_json(r.trace)}};
    out.text = {format_element(r.h), "trace steps = " + std::to_string(r.trace.steps.size())};
    return out;
}

Output cmd_growth(const std::string& label, const std::string& flavor, const std::vector<std::string>& gens_text, int max_md) {
    auto spec = make_spec(label, flavor, "");
    std::vector<Element> gens;
    for (const auto& g : gens_text) gens.push_back(parse_element_s(*spec, g));
    DimensionSeries s = quotient_dimension_series(*spec, gens, max_md);

    // engine parameters (m, n) from the first length-homogeneous generator of length <= 2
    std::optional<std::pair<int, int>> mn;
    ReductionEngine eng(spec->basis_ptr());
    for (const Element& g : gens) {
        try {
            int m = ReductionEngine::length_of(g);
            if (m >= 1 && m <= 2) {
                mn = {m, eng.uniform_threshold(g)};
                break;
            }
        } catch (const std::invalid_argument&) {
        }
    }
    Output out;
    out.header = {"j", "dim_full", "dim_ideal", "dim_quotient", "bound"};
    if (mn) out.text.push_back("engine m = " + std::to_string(mn->first) + ", n = " + std::to_string(mn->second));
    out.text.push_back("j\tdim_full\tdim_ideal\tdim_quotient\tbound");
    json rows = json::array();
    std::vector<mpz_class> bounds;
    for (auto& p : s.points) {
        std::string bound = "NA";
        if (mn) {
            p.bound = count_normal_words(spec->basis().dim(), mn->first, mn->second + 1, p.j);
            bound = p.bound->get_str();
            bounds.push_back(*p.bound);
        }
        std::vector<std::string> row{std::to_string(p.j), p.dim_full.get_str(), p.dim_ideal.get_str(), p.dim_quotient.get_str(), bound};
        rows.push_back({{"j", p.j}, {"dim_full", row[1]}, {"dim_ideal", row[2]}, {"dim_quotient", row[3]}, {"bound", bound}});
        out.text.push_back(row[0] + "\t" + row[1] + "\t" + row[2] + "\t" + row[3] + "\t" + bound);
        out.rows.push_back(std::move(row));
    }
    out.payload = {{"algebra", s.algebra}, {"generators", gens_text}, {"max_md", max_md}, {"series", rows}};
    if (mn) out.payload["engine"] = {{"m", mn->first}, {"n", mn->second}};
    if (s.points.size() >= 8) {
        auto q = s.quotient();
        GrowthClass g = classify_growth(q, mn ? &bounds : nullptr);
        std::string cls = g.polynomial ? "polynomial (degree " + std::to_string(g.degree) + ")" : "superpolynomial";
        out.payload["classification"] = {{"result", cls}, {"note", GrowthClass::kNote}};
        if (g.within_bound) out.payload["within_bound"] = *g.within_bound;
        out.text.push_back("classification: " + cls + " [" + GrowthClass::kNote + "]");
    }
    return out;
}

Output cmd_character(int k1, int k2, int terms) {
    HilbertSeries h = hilb_integrable(k1, k2, terms);
    Output out;
    out.header = {"n", "coefficient"};
    json coeffs = json::array();
    std::string line;
    for (int i = 0; i <= terms; ++i) {
        coeffs.push_back(h.series[i].get_str());
        out.rows.push_back({std::to_string(i), h.series[i].get_str()});
        line += (i ? " " : "") + h.series[i].get_str();
    }
    out.payload = {{"k1", k1}, {"k2", k2}, {"terms", terms}, {"exact", h.exact}, {"coefficients", coeffs}};
    out.text = {line, h.exact ? "exact" : "lower bound (odd-part partitions)"};
    return out;
}

PartPredicate parse_parts(const std::string& s) {
    if (s == "odd") return PartPredicate::odd();
    if (s == "all" || s == "unrestricted") return PartPredicate::unrestricted();
    if (s.rfind("mod:", 0) == 0) {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw UsageError("expected mod:<m>,<rho>");
        try {
            return PartPredicate::mod(std::stoi(s.substr(4, comma - 4)), std::stoi(s.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw UsageError("expected mod:<m>,<rho> with integers");
        }
    }
    throw UsageError("unknown part predicate '" + s + "'");
}

Output cmd_partitions(int n, const std::string& parts) {
    mpz_class c = count_partitions(n, parse_parts(parts));
    Output out;
    out.payload = {{"n", n}, {"parts", parts}, {"count", c.get_str()}};
    out.text = {c.get_str()};
    return out;
}

Output cmd_asymptotic(int n) {
    AsymptoticResult a = asymptotic_check(n);
    Output out;
    out.payload = {{"n", n}, {"exact", a.exact.get_str()}, {"formula", a.formula}, {"ratio", a.ratio},
                   {"corrected_formula", a.corrected_formula}, {"corrected_ratio", a.corrected_ratio}};
    std::ostringstream r1, r2;
    r1.precision(10);
    r2.precision(10);
    r1 << a.ratio;
    r2 << a.corrected_ratio;
    out.text = {"r_n = " + a.exact.get_str(), "stated formula = " + a.formula + "  ratio = " + r1.str(),
                "corrected formula = " + a.corrected_formula + "  ratio = " + r2.str()};
    return out;
}

Output cmd_sl2hat(const std::string& label, const std::string& level, int index, int window) {
    auto spec = make_spec(label, "affine", level.empty() ? "1" : level);
    Sl2HatFamily f = subalgebra_sl2hat(*spec, index, window);
    if (!f.closed()) throw std::logic_error("family does not close: " + f.failures.front());
    std::string h;
    for (const auto& [k, c] : f.h) h += (h.empty() ? "" : " + ") + c.str() + "*b" + std::to_string(k + 1);
    Output out;
    out.payload = {{"index", index}, {"k", f.k}, {"r", f.r}, {"e_prime", "b" + std::to_string(f.e_prime + 1)},
                   {"f_prime", "b" + std::to_string(f.f_prime + 1)}, {"h", h}, {"kappa", f.kappa.str()},
                   {"orbit_size", f.orbit_size}, {"kappa_representative", f.kappa_representative.str()},
                   {"central_scalar", f.central_scalar.str()}, {"window", window}, {"closed", f.closed()}};
    out.text = {"e' = b" + std::to_string(f.e_prime + 1) + "  f' = b" + std::to_string(f.f_prime + 1) + "  k = " + std::to_string(f.k),
                "h = " + h, "kappa(e',f') = " + f.kappa.str(), "central scalar r*kappa = " + f.central_scalar.str(),
                "closure verified for |n|,|m| <= " + std::to_string(window)};
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with twisted loop and affine algebras"};
    app.require_subcommand(1);
    std::string emit_format = "text";
    app.add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

    std::string algebra, flavor = "loop", level, a1, a2, order = "lex", ring = "S", gen, target, elem, parts = "odd";
    std::vector<std::string> ideal_gens;
    int max_md = 10, k1 = 1, k2 = 1, terms = 20, n = 0, index = 0, window = 3;
    bool uniform = false;

    auto add_spec_flags = [&](CLI::App* c) {
        c->add_option("algebra", algebra, "Algebra label such as A2:r2")->required();
        c->add_option("--flavor", flavor, "loop|current|poscurrent|affine|affine-derived");
        c->add_option("--level", level, "Central level lambda");
    };

    auto* basis = app.add_subcommand("basis", "List the equivariant basis");
    basis->add_option("algebra", algebra)->required();
    auto* bracket = app.add_subcommand("bracket", "Lie bracket of two letter combinations");
    add_spec_flags(bracket);
    bracket->add_option("x", a1)->required();
    bracket->add_option("y", a2)->required();
    auto* straighten = app.add_subcommand("straighten", "PBW normal form in U");
    add_spec_flags(straighten);
    straighten->add_option("element", a1)->required();
    auto* lt = app.add_subcommand("leading-term", "Leading monomial");
    add_spec_flags(lt);
    lt->add_option("element", a1)->required();
    lt->add_option("--order", order)->check(CLI::IsMember({"lex", "revlex"}));
    lt->add_option("--ring", ring)->check(CLI::IsMember({"S", "U"}));
    auto* reduce = app.add_subcommand("reduce", "Build an ideal element with prescribed leading term");
    reduce->add_option("algebra", algebra)->required();
    reduce->add_option("--generator", gen)->required();
    reduce->add_option("--target", target)->required();
    reduce->add_flag("--uniform-n", uniform);
    auto* project = app.add_subcommand("project-derived", "Bracket an affine element down to a d-free one");
    project->add_option("algebra", algebra)->required();
    project->add_option("--level", level);
    project->add_option("--elem", elem)->required();
    auto* growth = app.add_subcommand("growth", "Filtered dimensions of a quotient");
    growth->add_option("algebra", algebra)->required();
    growth->add_option("--ideal-gen", ideal_gens);
    growth->add_option("--max-md", max_md)->check(CLI::Range(0, 60));
    growth->add_option("--flavor", flavor = "current");
    auto* character = app.add_subcommand("character", "Hilbert series of an integrable module");
    character->add_option("--k1", k1);
    character->add_option("--k2", k2);
    character->add_option("--terms", terms)->check(CLI::Range(0, 100000));
    auto* partitions = app.add_subcommand("partitions", "Restricted partition counts");
    partitions->add_option("--n", n)->required()->check(CLI::Range(0, 1000000));
    partitions->add_option("--parts", parts);
    auto* asym = app.add_subcommand("asymptotic", "Odd-part partitions against their asymptotic");
    asym->add_option("--n", n)->required()->check(CLI::Range(1, 1000000));
    auto* sl2hat = app.add_subcommand("subalgebra-sl2hat", "Affine sl2 families");
    sl2hat->add_option("algebra", algebra)->required();
    sl2hat->add_option("--index", index);
    sl2hat->add_option("--level", level);
    sl2hat->add_option("--window", window)->check(CLI::Range(0, 50));

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        Output out;
        if (sub == basis) out = cmd_basis(algebra);
        else if (sub == bracket) out = cmd_bracket(*make_spec(algebra, flavor, level), a1, a2);
        else if (sub == straighten) out = cmd_straighten(*make_spec(algebra, flavor, level), a1);
        else if (sub == lt) out = cmd_leading_term(*make_spec(algebra, flavor, level), a1, order, ring);
        else if (sub == reduce) out = cmd_reduce(algebra, gen, target, uniform);
        else if (sub == project) out = cmd_project(algebra, level, elem);
        else if (sub == growth) out = cmd_growth(algebra, flavor, ideal_gens, max_md);
        else if (sub == character) out = cmd_character(k1, k2, terms);
        else if (sub == partitions) out = cmd_partitions(n, parts);
        else if (sub == asym) out = cmd_asymptotic(n);
        else out = cmd_sl2hat(algebra, level, index, window);
        emit(emit_format, name, out);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
