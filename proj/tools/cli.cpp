#include "toda/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "toda/gamma.hpp"
#include "toda/liouville.hpp"
#include "toda/mk_matrix.hpp"
#include "toda/pohozaev.hpp"

namespace toda::cli {
namespace {

using json = nlohmann::ordered_json;

enum class Format { Table, Csv, Json };

std::optional<Format> parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return std::nullopt;
}

// All numbers leave the program with 12 significant digits. For JSON the
// value is rounded so that the shortest round-trip form has at most 12.
double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

std::string fmt(Complex z) {
    const double re = round12(z.real()), im = round12(z.imag());
    if (im == 0.0) return fmt(re);
    if (re == 0.0) return fmt(im) + "i";
    return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

json complex_json(Complex z) { return {{"re", round12(z.real())}, {"im", round12(z.imag())}}; }

const char* yes_no(bool b) { return b ? "true" : "false"; }

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    Table table;
    json doc;
};

json envelope(const std::string& command) { return {{"schema_version", schema_version}, {"command", command}}; }

void print_table(const Table& t, std::ostream& os) {
    std::vector<std::size_t> width(t.headers.size());
    for (std::size_t c = 0; c < t.headers.size(); ++c) width[c] = t.headers[c].size();
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += cells[c];
            if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
        }
        os << s << '\n';
    };
    line(t.headers);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& row : t.rows) line(row);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

void print_csv(const Table& t, std::ostream& os) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << csv_field(cells[c]);
        os << '\n';
    };
    line(t.headers);
    for (const auto& row : t.rows) line(row);
}

void emit(const Report& r, Format f, std::ostream& os) {
    switch (f) {
        case Format::Table: print_table(r.table, os); break;
        case Format::Csv: print_csv(r.table, os); break;
        case Format::Json: os << r.doc.dump(2) << '\n'; break;
    }
}

// ---- command bodies -------------------------------------------------------

struct MuValues {
    Rational mu1, mu2;
};

std::optional<MuValues> read_mu(const std::string& mu1, const std::string& mu2) {
    if (mu1.empty()) return std::nullopt;
    return MuValues{parse_rational(mu1), parse_rational(mu2)};
}

json pair_json(const MassPair& p) { return {{"s1", to_string(p.s1)}, {"s2", to_string(p.s2)}}; }

Report gamma_report(Algebra a, const std::optional<MuValues>& mu) {
    const CartanMatrix K = CartanMatrix::of(a);
    if (mu && (mu->mu1 <= 0 || mu->mu2 <= 0)) throw NonPositiveMu("mu1 and mu2 must be positive");
    Report r;
    r.table.headers = {"index", "s1", "s2", "special"};
    if (mu) r.table.headers.insert(r.table.headers.end(), {"value1", "value2"});
    r.doc = envelope("gamma");
    r.doc["algebra"] = to_string(a);
    if (mu) r.doc["mu"] = {{"mu1", to_string(mu->mu1)}, {"mu2", to_string(mu->mu2)}};
    json pairs = json::array();
    int index = 1;
    for (const auto& p : enumerate_gamma(K).pairs) {
        json e = pair_json(p);
        e["special"] = is_special(p, K);
        std::vector<std::string> row{std::to_string(index++), to_string(p.s1), to_string(p.s2), yes_no(is_special(p, K))};
        if (mu) {
            const auto v1 = to_string(mass_eval(p.s1, mu->mu1, mu->mu2));
            const auto v2 = to_string(mass_eval(p.s2, mu->mu1, mu->mu2));
            e["value1"] = v1;
            e["value2"] = v2;
            row.insert(row.end(), {v1, v2});
        }
        pairs.push_back(std::move(e));
        r.table.rows.push_back(std::move(row));
    }
    r.doc["pairs"] = std::move(pairs);
    return r;
}

Report pi_check_report(Algebra a, const std::string& s1, const std::string& s2, const std::optional<MuValues>& mu) {
    const CartanMatrix K = CartanMatrix::of(a);
    const GammaSet gamma = enumerate_gamma(K);
    std::vector<MassPair> subjects;
    if (s1.empty())
        subjects = gamma.pairs;
    else
        subjects.push_back({parse_mass_expr(s1), parse_mass_expr(s2)});

    Report r;
    r.table.headers = {"s1", "s2", "residual", "satisfies_pi", "in_gamma"};
    if (mu) r.table.headers.push_back("residual_value");
    r.doc = envelope("pi-check");
    r.doc["algebra"] = to_string(a);
    if (mu) r.doc["mu"] = {{"mu1", to_string(mu->mu1)}, {"mu2", to_string(mu->mu2)}};
    json checks = json::array();
    for (const auto& p : subjects) {
        const QuadPoly res = pi_residual(p, K);
        const bool in_gamma = std::find(gamma.pairs.begin(), gamma.pairs.end(), p) != gamma.pairs.end();
        json e = pair_json(p);
        e["residual"] = to_string(res);
        e["satisfies_pi"] = res.is_zero();
        e["in_gamma"] = in_gamma;
        std::vector<std::string> row{to_string(p.s1), to_string(p.s2), to_string(res), yes_no(res.is_zero()),
                                     yes_no(in_gamma)};
        if (mu) {
            const auto v = to_string(res.eval(mu->mu1, mu->mu2));
            e["residual_value"] = v;
            row.push_back(v);
        }
        checks.push_back(std::move(e));
        r.table.rows.push_back(std::move(row));
    }
    r.doc["checks"] = std::move(checks);
    return r;
}

Report mk_report(const std::vector<Algebra>& algebras) {
    Report r;
    r.table.headers = {"algebra", "s1", "s2", "l11", "l12", "l21", "l22", "determinant"};
    r.doc = envelope("mk");
    json rows = json::array();
    for (Algebra a : algebras) {
        for (const auto& c : mk_nonsingular_certificate(CartanMatrix::of(a))) {
            const std::vector<std::string> l{to_string(c.input.l11), to_string(c.input.l12), to_string(c.input.l21),
                                             to_string(c.input.l22)};
            json e = {{"algebra", to_string(a)}, {"s1", to_string(c.pair.s1)}, {"s2", to_string(c.pair.s2)},
                      {"l", l}, {"determinant", to_string(c.determinant)}};
            rows.push_back(std::move(e));
            r.table.rows.push_back(
                {to_string(a), to_string(c.pair.s1), to_string(c.pair.s2), l[0], l[1], l[2], l[3], to_string(c.determinant)});
        }
    }
    r.doc["all_nonsingular"] = true;  // a singular row throws before this point
    r.doc["rows"] = std::move(rows);
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string subset_text(const std::vector<std::size_t>& j) {
    std::string s = "{";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + std::to_string(j[i]);
    return s + "}";
}

Report forbidden_report(const VortexConfig& cfg, const std::vector<int>& components, double cutoff,
                        std::size_t max_vortices) {
    Report r;
    r.table.headers = {"component", "value", "multiplier", "subset", "chosen", "n", "realizations"};
    r.doc = envelope("forbidden");
    r.doc["algebra"] = to_string(cfg.algebra);
    r.doc["vortices"] = cfg.vortices.size();
    r.doc["cutoff"] = round12(cutoff);
    json sets = json::array();
    for (int component : components) {
        const ForbiddenSet set = gamma_i(cfg, component, cutoff, max_vortices);
        json values = json::array();
        for (const auto& v : set.values) {
            json chosen = json::array();
            std::string chosen_text;
            for (std::size_t k = 0; k < v.provenance.chosen.size(); ++k) {
                chosen.push_back(pair_json(v.provenance.chosen[k]));
                chosen_text += (k ? "; " : "") + to_string(v.provenance.chosen[k]);
            }
            const std::string mult = v.multiplier ? to_string(*v.multiplier) : "";
            values.push_back({{"value", round12(v.value)},
                              {"multiplier", v.multiplier ? json(mult) : json(nullptr)},
                              {"realizations", v.realizations},
                              {"provenance",
                               {{"subset", v.provenance.subset}, {"chosen", chosen}, {"n", v.provenance.n}}}});
            r.table.rows.push_back({std::to_string(component), fmt(v.value), v.multiplier ? mult : "-",
                                    subset_text(v.provenance.subset), chosen_text.empty() ? "-" : chosen_text,
                                    std::to_string(v.provenance.n), std::to_string(v.realizations)});
        }
        sets.push_back({{"component", component}, {"values", std::move(values)}});
    }
    r.doc["sets"] = std::move(sets);
    return r;
}

Report compact_report(const VortexConfig& cfg, double rho1, double rho2, double tol, std::size_t max_vortices) {
    const CompactnessVerdict v = check_compactness(cfg, rho1, rho2, tol, max_vortices);
    Report r;
    r.table.headers = {"component", "rho", "regime", "nearest_forbidden", "distance", "criterion_met"};
    r.doc = envelope("compact");
    r.doc["algebra"] = to_string(cfg.algebra);
    r.doc["regime"] = to_string(v.regime);
    r.doc["criterion_met"] = v.compact_criterion_met;
    r.doc["tol"] = round12(tol);
    const double rho[2] = {rho1, rho2};
    json comps = json::array();
    for (int i = 0; i < 2; ++i) {
        const auto& n = v.nearest[i];
        comps.push_back({{"component", i + 1},
                         {"rho", round12(rho[i])},
                         {"nearest_forbidden", n ? json(round12(n->value)) : json(nullptr)},
                         {"distance", n ? json(round12(n->distance)) : json(nullptr)}});
        r.table.rows.push_back({std::to_string(i + 1), fmt(rho[i]), to_string(v.regime), n ? fmt(n->value) : "-",
                                n ? fmt(n->distance) : "-", yes_no(v.compact_criterion_met)});
    }
    r.doc["components"] = std::move(comps);
    return r;
}

Polynomial parse_coefficients(const std::string& text) {
    std::vector<Complex> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_complex(item));
    if (c.empty()) throw ParseError("empty coefficient list");
    return Polynomial(std::move(c));
}

Report liouville_report(const std::string& num, const std::string& den, double rel_tol, double root_tol) {
    const RationalMap f(parse_coefficients(num), parse_coefficients(den));
    const MassIntegral mass = integrate_mass(f, rel_tol);
    const QuantizationCheck q = quantization_of(mass, rel_tol);
    const RamificationProfile prof = ramification(f, root_tol);
    const double four_pi_ = 4.0 * std::numbers::pi;
    const double quant_error = std::abs(mass.value / (2.0 * four_pi_ * f.degree()) - 1.0);

    Report r;
    r.table.headers = {"quantity", "value"};
    auto row = [&](std::string k, std::string v) { r.table.rows.push_back({std::move(k), std::move(v)}); };
    r.doc = envelope("liouville");
    r.doc["degree"] = f.degree();
    r.doc["mass"] = round12(mass.value);
    r.doc["mass_error_estimate"] = round12(mass.error_estimate);
    r.doc["mass_over_4pi"] = round12(q.m);
    row("degree", std::to_string(f.degree()));
    row("mass", fmt(mass.value));
    row("mass_error_estimate", fmt(mass.error_estimate));
    row("mass_over_4pi", fmt(q.m));

    bool schwarzian_ok = true;
    json vortices = json::array();
    for (std::size_t k = 0; k < prof.finite_points.size(); ++k) {
        const auto& b = prof.finite_points[k];
        const Complex c = schwarzian_pole_coefficient(f, b.location);
        const double expected = -b.alpha * (b.alpha + 2) / 2.0;
        schwarzian_ok = schwarzian_ok && std::abs(c - expected) <= 1e-6 * std::max(1.0, std::abs(expected));
        vortices.push_back(
            {{"location", complex_json(b.location)}, {"alpha", b.alpha}, {"schwarzian_coefficient", complex_json(c)}});
        row("vortex " + std::to_string(k + 1),
            "z=" + fmt(b.location) + " alpha=" + std::to_string(b.alpha) + " schwarzian=" + fmt(c));
    }
    r.doc["vortices"] = std::move(vortices);
    r.doc["alpha_infinity"] = round12(prof.alpha_infinity);
    row("alpha_infinity", fmt(prof.alpha_infinity));

    const json checks = {{"mass_over_4pi_even", q.is_even_integer},
                         {"mass_relative_error", round12(quant_error)},
                         {"riemann_hurwitz", prof.riemann_hurwitz_holds},
                         {"multiplicity_at_infinity", prof.multiplicity_at_infinity},
                         {"boundary_log_slope", round12(prof.boundary_log_slope)},
                         {"log_slope_matches", prof.log_slope_matches},
                         {"schwarzian_coefficients_match", schwarzian_ok}};
    for (const auto& [k, v] : checks.items()) row(k, v.is_boolean() ? yes_no(v.get<bool>()) : v.is_number_float() ? fmt(v.get<double>()) : v.dump());
    r.doc["checks"] = checks;
    return r;
}

// ---- config ---------------------------------------------------------------

Rational json_rational(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer() || v.is_number_float()) return parse_rational(v.dump());
    throw ParseError(where + ": expected a rational number");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [k, _] : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
            throw ParseError(where + ": unknown key '" + k + "'");
}

Alpha json_alpha(const json& v, const std::string& where) {
    if (!v.is_object()) return Alpha(json_rational(v, where));
    reject_unknown_keys(v, {"basis", "coords", "numeric"}, where);
    if (!v.contains("coords") || !v["coords"].is_array() || v["coords"].empty())
        throw ParseError(where + ": 'coords' must be a non-empty array");
    QVector q;
    for (std::size_t i = 0; i < v["coords"].size(); ++i)
        q.coords.push_back(json_rational(v["coords"][i], where + ".coords"));
    if (v.contains("basis")) {
        if (!v["basis"].is_array()) throw ParseError(where + ": 'basis' must be an array of names");
        for (const auto& b : v["basis"]) {
            if (!b.is_string()) throw ParseError(where + ": basis names must be strings");
            q.basis.push_back(b.get<std::string>());
        }
        if (q.basis.size() != q.coords.size()) throw ParseError(where + ": basis and coords differ in length");
    }
    double numeric = 0.0;
    if (v.contains("numeric")) {
        if (!v["numeric"].is_number()) throw ParseError(where + ": 'numeric' must be a number");
        numeric = v["numeric"].get<double>();
    } else if (!q.is_rational()) {
        throw ParseError(where + ": an irrational strength needs 'numeric'");
    }
    return Alpha(std::move(q), numeric);
}

}  // namespace

VortexConfig parse_vortex_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config: expected an object");
    reject_unknown_keys(doc, {"algebra", "vortices"}, "config");
    if (!doc.contains("algebra") || !doc["algebra"].is_string()) throw ParseError("config: 'algebra' is required");
    const auto algebra = parse_algebra(doc["algebra"].get<std::string>());
    if (!algebra) throw ParseError("config: unknown algebra '" + doc["algebra"].get<std::string>() + "'");
    VortexConfig cfg;
    cfg.algebra = *algebra;
    if (doc.contains("vortices")) {
        if (!doc["vortices"].is_array()) throw ParseError("config: 'vortices' must be an array");
        for (std::size_t i = 0; i < doc["vortices"].size(); ++i) {
            const json& v = doc["vortices"][i];
            const std::string where = "vortices[" + std::to_string(i) + "]";
            if (!v.is_object() || !v.contains("alpha1") || !v.contains("alpha2"))
                throw ParseError(where + ": needs 'alpha1' and 'alpha2'");
            reject_unknown_keys(v, {"alpha1", "alpha2"}, where);
            cfg.vortices.push_back({json_alpha(v["alpha1"], where + ".alpha1"), json_alpha(v["alpha2"], where + ".alpha2")});
        }
    }
    return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and numerical checks for rank-2 Toda systems (A2, B2, G2)", "toda"};
    app.require_subcommand(1);

    std::string default_format = "table";
    if (const char* env = std::getenv(format_env); env && *env) {
        if (!parse_format(env)) {
            err << "usage error: " << format_env << "='" << env << "' is not one of table, csv, json\n";
            return 2;
        }
        default_format = env;
    }

    const CLI::Validator algebra_check(
        [](std::string& s) { return parse_algebra(s) ? std::string() : "unknown algebra '" + s + "' (expected A2, B2, G2)"; },
        "A2|B2|G2");
    const auto formats = CLI::IsMember({"table", "csv", "json"});

    std::string format = default_format;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format (default from " + std::string(format_env) + ", else table)")
            ->check(formats);
    };

    std::string algebra, mu1, mu2, s1, s2, config, numerator, denominator = "1";
    double cutoff = 0, rho1 = 0, rho2 = 0, tol = 1e-6, rel_tol = 1e-8, root_tol = 1e-7;
    int component = 0;
    std::size_t max_vortices = default_max_vortices;

    auto add_mu = [&](CLI::App* sub) {
        auto* a = sub->add_option("--mu1", mu1, "mu1 as a rational or exact decimal");
        auto* b = sub->add_option("--mu2", mu2, "mu2 as a rational or exact decimal");
        a->needs(b);
        b->needs(a);
    };

    auto* gamma = app.add_subcommand("gamma", "List the local mass set of an algebra");
    gamma->add_option("--algebra", algebra, "A2, B2 or G2")->required()->check(algebra_check);
    add_mu(gamma);
    add_format(gamma);

    auto* pi = app.add_subcommand("pi-check", "Pohozaev residual of a mass pair (default: every local mass pair)");
    pi->add_option("--algebra", algebra, "A2, B2 or G2")->required()->check(algebra_check);
    auto* o1 = pi->add_option("--s1", s1, "First mass, e.g. \"2*mu1 + 2*mu2\"");
    auto* o2 = pi->add_option("--s2", s2, "Second mass");
    o1->needs(o2);
    o2->needs(o1);
    add_mu(pi);
    add_format(pi);

    auto* mk = app.add_subcommand("mk", "Nonsingularity certificate for the kernel matrices (default: all algebras)");
    mk->add_option("--algebra", algebra, "A2, B2 or G2")->check(algebra_check);
    add_format(mk);

    auto* forbidden = app.add_subcommand("forbidden", "Forbidden values for a vortex configuration");
    forbidden->add_option("--config", config, "Vortex configuration (JSON)")->required()->check(CLI::ExistingFile);
    forbidden->add_option("--cutoff", cutoff, "Largest value to list")->required()->check(CLI::PositiveNumber);
    forbidden->add_option("--component", component, "1 or 2 (default: both)")->check(CLI::IsMember({1, 2}));
    forbidden->add_option("--max-vortices", max_vortices, "Refuse larger configurations")->capture_default_str();
    add_format(forbidden);

    auto* compact = app.add_subcommand("compact", "Check the compactness hypotheses at (rho1, rho2)");
    compact->add_option("--config", config, "Vortex configuration (JSON)")->required()->check(CLI::ExistingFile);
    compact->add_option("--rho1", rho1, "rho1 > 0")->required()->check(CLI::PositiveNumber);
    compact->add_option("--rho2", rho2, "rho2 > 0")->required()->check(CLI::PositiveNumber);
    compact->add_option("--tol", tol, "Minimum distance from a forbidden value")->capture_default_str()->check(
        CLI::PositiveNumber);
    compact->add_option("--max-vortices", max_vortices, "Refuse larger configurations")->capture_default_str();
    add_format(compact);

    auto* liouville = app.add_subcommand("liouville", "Mass and ramification of the solution built from f = p/q");
    liouville->add_option("--numerator", numerator, "Coefficients of p, constant term first, e.g. \"0,1\" for z")
        ->required();
    liouville->add_option("--denominator", denominator, "Coefficients of q, constant term first")->capture_default_str();
    liouville->add_option("--rel-tol", rel_tol, "Relative tolerance of the mass integral, in (0, 1e-3]")
        ->capture_default_str();
    liouville->add_option("--root-tol", root_tol, "Clustering radius for branch points")->capture_default_str()->check(
        CLI::PositiveNumber);
    add_format(liouville);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n";
        const auto used = app.get_subcommands();
        err << (used.empty() ? app.help() : used.front()->help());
        return 2;
    }

    const Format fmt_choice = *parse_format(format);
    const auto mu = [&] { return read_mu(mu1, mu2); };
    try {
        Report report;
        if (gamma->parsed()) {
            report = gamma_report(*parse_algebra(algebra), mu());
        } else if (pi->parsed()) {
            report = pi_check_report(*parse_algebra(algebra), s1, s2, mu());
        } else if (mk->parsed()) {
            std::vector<Algebra> which(std::begin(all_algebras), std::end(all_algebras));
            if (!algebra.empty()) which = {*parse_algebra(algebra)};
            report = mk_report(which);
        } else if (forbidden->parsed()) {
            std::vector<int> comps = component ? std::vector<int>{component} : std::vector<int>{1, 2};
            report = forbidden_report(parse_vortex_config(read_file(config)), comps, cutoff, max_vortices);
        } else if (compact->parsed()) {
            report = compact_report(parse_vortex_config(read_file(config)), rho1, rho2, tol, max_vortices);
        } else {
            report = liouville_report(numerator, denominator, rel_tol, root_tol);
        }
        std::ostringstream buffer;
        emit(report, fmt_choice, buffer);
        out << buffer.str();
    } catch (const toda::error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace toda::cli
