#include "heightforge/cli/cli.hpp"

#include "heightforge/cli/parser.hpp"
#include "heightforge/core/errors.hpp"
#include "heightforge/freeness/freeness.hpp"
#include "heightforge/height/height.hpp"
#include "heightforge/kummer/tower.hpp"
#include "heightforge/norm/quotient.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace heightforge {

using Json = nlohmann::ordered_json;

namespace {

Json integer_json(const Integer& n) {
    if (n.fits_slong_p())
        return n.get_si();
    return n.get_str();
}

Json integers_json(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(integer_json(x));
    return a;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

Json interval_json(const CertifiedInterval& x, double tol) {
    Json j;
    j["lo"] = decimal_lower(x, tol);
    j["hi"] = decimal_upper(x, tol);
    return j;
}

// Values far below 1 keep 16 significant digits rather than 16 decimals.
std::string small_decimal(const Rational& q, double tol, bool up) {
    int digits = tol >= 1e-15 ? 16 : static_cast<int>(std::ceil(-std::log10(tol))) + 4;
    const double d = q.get_d();
    if (d > 0 && d < 1)
        digits += static_cast<int>(std::ceil(-std::log10(d)));
    return decimal_round(q, digits, up);
}

std::vector<GroupElement> parse_list(const std::string& text) {
    std::vector<GroupElement> out;
    for (const auto& item : split_list(text))
        out.push_back(parse_expression(item));
    return out;
}

CertifiedInterval parse_kappa(const std::string& text) {
    const std::string s = text;
    if (s.rfind("log(", 0) == 0 && s.back() == ')') {
        Rational x = parse_rational(s.substr(4, s.size() - 5));
        if (x <= 0)
            throw InvalidInput("log of a nonpositive number");
        std::map<Integer, Rational> coeffs;
        for (const auto& [p, e] : factor_integer(x.get_num()))
            coeffs[p] += e;
        for (const auto& [p, e] : factor_integer(x.get_den()))
            coeffs[p] -= e;
        return log_combination(coeffs, 1e-30);
    }
    return CertifiedInterval::exact(parse_rational(s));
}

Integer parse_integer(const std::string& text, const char* what) {
    try {
        Integer n(text, 10);
        return n;
    } catch (const std::invalid_argument&) {
        throw InvalidInput(std::string(what) + " must be an integer: '" + text + "'");
    }
}

Json relation_json(const Relation& r) {
    Json j;
    j["exponents"] = integers_json(r.exponents);
    j["torsion"] = r.torsion_turn.get_str();
    return j;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Json error_json(const char* kind, const std::string& message) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    return j;
}

struct Options {
    double tol = default_tolerance;
    std::string bound = std::to_string(default_exponent_bound);
    std::string gamma;
    std::string kappa;
    std::string method = "auto";
    long conductor = 0;
    std::string orders;
    std::string alpha;
    std::optional<long> power;
    std::string candidates;
    bool strict = false;
    bool csv = false;
    std::vector<std::string> exprs;
};

int cmd_height(const Options& o, std::ostream& out) {
    GroupElement x = parse_expression(o.exprs.at(0));
    CertifiedInterval h = x.is_radical() ? sunit_height(x.radical(), o.tol).value
                                         : weil_height(x.algebraic(), HeightOptions{o.tol, true});
    out << interval_json(h, o.tol).dump() << "\n";
    return exit_ok;
}

int cmd_minpoly(const Options& o, std::ostream& out) {
    GroupElement x = parse_expression(o.exprs.at(0));
    IntPoly f = x.is_radical() ? x.radical().minimal_polynomial() : x.algebraic().minimal_polynomial();
    out << integers_json(f.coefficients()).dump() << "\n";
    return exit_ok;
}

int cmd_depend(const Options& o, std::ostream& out) {
    std::vector<GroupElement> xs;
    for (const auto& e : o.exprs)
        xs.push_back(parse_expression(e));
    const Integer bound = parse_integer(o.bound, "--bound");
    if (bound < 1)
        throw InvalidInput("--bound must be positive");
    try {
        auto r = find_dependence(xs, bound);
        out << (r ? relation_json(*r) : Json(nullptr)).dump() << "\n";
    } catch (const Inconclusive&) {
        out << Json("inconclusive").dump() << "\n";
        throw;
    }
    return exit_ok;
}

int cmd_hull(const Options& o, std::ostream& out) {
    GroupElement a = parse_expression(o.exprs.at(0));
    auto c = hull_member(a, GroupBasis(parse_list(o.gamma)));
    if (!c) {
        out << "null\n";
        return exit_ok;
    }
    Json j;
    j["n"] = integer_json(c->n);
    j["exponents"] = rationals_json(c->exponents);
    j["torsion"] = c->torsion_turn.get_str();
    out << j.dump() << "\n";
    return exit_ok;
}

int cmd_qnorm(const Options& o, std::ostream& out) {
    GroupElement a = parse_expression(o.exprs.at(0));
    SeminormMethod m = SeminormMethod::automatic;
    if (o.method == "lp")
        m = SeminormMethod::lp;
    else if (o.method == "grid")
        m = SeminormMethod::grid;
    auto r = gamma_seminorm(a, GroupBasis(parse_list(o.gamma)), o.tol, m);
    Json j = interval_json(r.value, o.tol);
    j["method"] = to_string(r.method);
    j["argmin"] = rationals_json(r.argmin);
    out << j.dump() << "\n";
    return exit_ok;
}

int cmd_remond(const Options& o, std::ostream& out) {
    auto cert = remond_constant(parse_list(o.gamma), parse_kappa(o.kappa), o.tol);
    Json j;
    j["Q"] = integer_json(cert.Q);
    j["c_lo"] = small_decimal(cert.c.lo, o.tol, false);
    j["c_hi"] = small_decimal(cert.c.hi, o.tol, true);
    out << j.dump() << "\n";
    return exit_ok;
}

int cmd_descend(const Options& o, std::ostream& out) {
    std::vector<Rational> radicands;
    for (const auto& item : split_list(o.gamma)) {
        RadicalExpr r = parse_radical(item);
        if (!r.is_rational())
            throw InvalidInput("tower radicands must be rational: '" + item + "'");
        radicands.push_back(r.rational_value());
    }
    std::vector<long> orders;
    for (const auto& item : split_list(o.orders)) {
        Integer m = parse_integer(trim(item), "--orders");
        if (!m.fits_slong_p())
            throw InvalidInput("order out of range");
        orders.push_back(m.get_si());
    }
    RadicalTower tower = RadicalTower::build(o.conductor, radicands, orders);
    TowerElement alpha = parse_tower_expression(o.alpha, tower);
    try {
        Descent d = descend(alpha, tower, o.power);
        Json j;
        j["exponents"] = rationals_json(d.exponents);
        j["beta"] = tower.base().to_string(d.beta);
        out << j.dump() << "\n";
    } catch (const NotTorsion&) {
        out << Json("not-torsion").dump() << "\n";
    }
    return exit_ok;
}

int cmd_gap(const Options& o, std::ostream& out) {
    std::ifstream in(o.candidates);
    if (!in)
        throw InvalidInput("cannot read candidate file '" + o.candidates + "'");
    std::vector<GroupElement> candidates;
    std::vector<int> lines;
    std::vector<std::string> texts;
    Json malformed = Json::array();
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty())
            continue;
        try {
            candidates.push_back(parse_expression(text, n));
            lines.push_back(n);
            texts.push_back(text);
        } catch (const ParseError& e) {
            if (o.strict)
                throw;
            Json m;
            m["line"] = e.line();
            m["column"] = e.column();
            m["message"] = e.what();
            malformed.push_back(m);
        }
    }
    GapSearchResult r = gap_search(candidates, GroupBasis(parse_list(o.gamma)), o.tol);
    if (o.csv) {
        out << "line,expression,status,lo,hi\n";
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            out << lines[i] << ",\"" << texts[i] << "\",";
            if (r.values[i])
                out << "value," << decimal_lower(*r.values[i], o.tol) << "," << decimal_upper(*r.values[i], o.tol);
            else
                out << "excluded,,";
            out << "\n";
        }
        for (const auto& m : malformed)
            out << m["line"].get<int>() << ",,malformed,,\n";
        return exit_ok;
    }
    Json j;
    if (r.min) {
        j["min"] = interval_json(*r.min, o.tol);
        Json a;
        a["line"] = lines[r.argmin];
        a["expression"] = texts[r.argmin];
        j["argmin"] = a;
    } else {
        j["min"] = nullptr;
        j["argmin"] = nullptr;
    }
    j["excluded_count"] = r.excluded.size();
    j["malformed"] = malformed;
    out << j.dump() << "\n";
    return exit_ok;
}

int cmd_freeness(const Options& o, std::ostream& out) {
    std::vector<GroupElement> xs;
    for (const auto& e : o.exprs)
        xs.push_back(parse_expression(e));
    GroupBasis gamma(parse_list(o.gamma));
    SpanRank s = free_rank_of_span(xs, gamma);
    Json j;
    j["rank"] = s.rank;
    j["basis"] = s.basis;
    Json rels = Json::array();
    for (const auto& [i, rel] : s.relations) {
        Json r;
        r["index"] = i;
        r["alpha_exponents"] = integers_json(rel.alpha_exponents);
        r["gamma_exponents"] = integers_json(rel.gamma_exponents);
        r["torsion"] = rel.torsion_turn.get_str();
        r["relation"] = relation_string(xs, s.gamma_basis, rel);
        rels.push_back(r);
    }
    j["relations"] = rels;
    Json gb = Json::array();
    for (const auto& g : s.gamma_basis.generators())
        gb.push_back(g.to_string());
    j["gamma_basis"] = gb;
    if (!o.kappa.empty()) {
        ProbeReport p = discreteness_probe(xs, gamma, parse_kappa(o.kappa), o.tol);
        Json probe;
        probe["evidence_only"] = true;
        probe["consistent"] = p.consistent;
        Json entries = Json::array();
        for (const auto& e : p.entries) {
            Json en = interval_json(e.value, o.tol);
            en["bucket"] = to_string(e.bucket);
            entries.push_back(en);
        }
        probe["entries"] = entries;
        j["probe"] = probe;
    }
    out << j.dump() << "\n";
    return exit_ok;
}

} // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
            --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty())
        out.push_back(trim(cur));
    for (const auto& s : out)
        if (s.empty())
            throw InvalidInput("empty entry in list '" + text + "'");
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Heights, quotient seminorms and Kummer descent for algebraic numbers", "heightforge"};
    app.require_subcommand(1);
    auto tol_check = CLI::PositiveNumber;

    auto* height = app.add_subcommand("height", "Weil height of an algebraic number");
    height->add_option("expr", o.exprs, "expression")->required()->expected(1);
    height->add_option("--tol", o.tol, "interval width")->check(tol_check);

    auto* minpoly = app.add_subcommand("minpoly", "Minimal polynomial, coefficients in ascending degree");
    minpoly->add_option("expr", o.exprs, "expression")->required()->expected(1);

    auto* depend = app.add_subcommand("depend", "Multiplicative relation among the elements");
    depend->add_option("exprs", o.exprs, "expressions")->required();
    depend->add_option("--bound", o.bound, "bound on the exponents");

    auto* hull = app.add_subcommand("hull", "Membership in the divisible hull of Gamma");
    hull->add_option("alpha", o.exprs, "expression")->required()->expected(1);
    hull->add_option("--gamma", o.gamma, "comma-separated generators");

    auto* qnorm = app.add_subcommand("qnorm", "Height seminorm modulo the divisible hull of Gamma");
    qnorm->add_option("alpha", o.exprs, "expression")->required()->expected(1);
    qnorm->add_option("--gamma", o.gamma, "comma-separated generators");
    qnorm->add_option("--tol", o.tol, "interval width")->check(tol_check);
    qnorm->add_option("--method", o.method, "auto, lp or grid")->check(CLI::IsMember({"auto", "lp", "grid"}));

    auto* remond = app.add_subcommand("remond-c", "Height gap constant for independent generators");
    remond->add_option("--gamma", o.gamma, "comma-separated generators")->required();
    remond->add_option("--kappa", o.kappa, "decimal, fraction or log(N)")->required();
    remond->add_option("--tol", o.tol, "interval width")->check(tol_check);

    auto* desc = app.add_subcommand("descend", "Kummer descent in a radical tower over Q(zeta_M)");
    desc->add_option("--conductor", o.conductor, "M")->required()->check(CLI::PositiveNumber);
    desc->add_option("--gamma", o.gamma, "comma-separated positive rational radicands")->required();
    desc->add_option("--orders", o.orders, "comma-separated root orders")->required();
    desc->add_option("--alpha", o.alpha, "tower expression")->required();
    desc->add_option("--power", o.power, "descend alpha^n instead");

    auto* gap = app.add_subcommand("gap", "Smallest seminorm over a candidate list");
    gap->add_option("--gamma", o.gamma, "comma-separated generators");
    gap->add_option("--candidates", o.candidates, "file with one expression per line")->required();
    gap->add_flag("--strict", o.strict, "stop at the first malformed line");
    gap->add_flag("--csv", o.csv, "value table instead of JSON");
    gap->add_option("--tol", o.tol, "interval width")->check(tol_check);

    auto* freeness = app.add_subcommand("freeness", "Rank of the span of the classes modulo the hull of Gamma");
    freeness->add_option("exprs", o.exprs, "expressions")->required();
    freeness->add_option("--gamma", o.gamma, "comma-separated generators");
    freeness->add_option("--kappa", o.kappa, "also probe the seminorm against this gap");
    freeness->add_option("--tol", o.tol, "interval width")->check(tol_check);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << error_json("usage", e.what()).dump() << "\n";
        return exit_usage;
    }

    try {
        if (height->parsed())
            return cmd_height(o, out);
        if (minpoly->parsed())
            return cmd_minpoly(o, out);
        if (depend->parsed())
            return cmd_depend(o, out);
        if (hull->parsed())
            return cmd_hull(o, out);
        if (qnorm->parsed())
            return cmd_qnorm(o, out);
        if (remond->parsed())
            return cmd_remond(o, out);
        if (desc->parsed())
            return cmd_descend(o, out);
        if (gap->parsed())
            return cmd_gap(o, out);
        if (freeness->parsed())
            return cmd_freeness(o, out);
    } catch (const ParseError& e) {
        Json j = error_json("parse", e.what());
        j["line"] = e.line();
        j["column"] = e.column();
        err << j.dump() << "\n";
        return exit_parse;
    } catch (const Inconclusive& e) {
        err << error_json("inconclusive", e.what()).dump() << "\n";
        return exit_inconclusive;
    } catch (const PrecisionExhausted& e) {
        err << error_json("precision", e.what()).dump() << "\n";
        return exit_precision;
    } catch (const Entangled& e) {
        Json j = error_json("entangled", e.what());
        j["monomial"] = e.monomial();
        j["relation"] = e.relation();
        err << j.dump() << "\n";
        return exit_usage;
    } catch (const UnsupportedExpression& e) {
        err << error_json("unsupported", e.what()).dump() << "\n";
        return exit_usage;
    } catch (const InvalidInput& e) {
        err << error_json("invalid", e.what()).dump() << "\n";
        return exit_usage;
    } catch (const NotTorsion& e) {
        err << error_json("not-torsion", e.what()).dump() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << error_json("internal", e.what()).dump() << "\n";
        return exit_precision;
    }
    return exit_usage;
}

} // namespace heightforge
