// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// cmsurf: command-line front end. Exit status 0 on success, 1 when a
// mathematical precondition fails, 2 on usage errors.

#include "cmsurf/cmsurf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace cmsurf;
using nlohmann::ordered_json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

QuadraticForm parse_form(const std::string& s)
{
    std::vector<Int> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        Int x;
        if (item.empty() || x.set_str(item, 10) != 0)
            throw usage_error("malformed form '" + s + "': expected a,b,c");
        v.push_back(x);
    }
    if (v.size() != 3)
        throw usage_error("malformed form '" + s + "': expected a,b,c");
    return {v[0], v[1], v[2]};
}

Int parse_int(const std::string& s, const std::string& what)
{
    Int x;
    if (s.empty() || x.set_str(s, 10) != 0)
        throw usage_error("malformed integer for " + what + ": '" + s + "'");
    return x;
}

// integers serialize as JSON numbers when they fit, as strings otherwise
ordered_json jint(const Int& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

ordered_json jform(const QuadraticForm& q) { return ordered_json::array({jint(q.a), jint(q.b), jint(q.c)}); }

std::string text_form(const QuadraticForm& q)
{
    return "[" + q.a.get_str() + "," + q.b.get_str() + "," + q.c.get_str() + "]";
}

ordered_json jcurve(const CurveClass& c) { return {{"f", jint(c.f)}, {"form", jform(c.cls.repr)}}; }

ordered_json jreal(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

ordered_json jcomplex(const Complex& z, int digits) { return {{"re", jreal(z.re, digits)}, {"im", jreal(z.im, digits)}}; }

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

ordered_json report_json(const DecompositionReport& r)
{
    auto [d_K, f0] = split_discriminant(r.q0.discriminant());
    ordered_json out{{"n", jint(r.n)},
                     {"Q0", jform(r.q0)},
                     {"d_K", jint(d_K)},
                     {"f0", jint(f0)},
                     {"delta_tilde", r.delta_tilde},
                     {"delta", r.delta},
                     {"delta0", r.delta0}};
    if (r.predicted)
        out["predicted"] = {{"value", jint(r.predicted->value)}, {"formula", to_string(r.predicted->formula)}};
    out["possibly_incomplete"] = r.possibly_incomplete;
    ordered_json per = ordered_json::array();
    for (const auto& [fp, count] : r.per_conductors())
        per.push_back({{"f1", jint(fp.first)}, {"f2", jint(fp.second)}, {"count", count}});
    out["per_conductors"] = per;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"first", jcurve(p.first)}, {"second", jcurve(p.second)}});
    out["pairs"] = pairs;
    return out;
}

void report_text(const DecompositionReport& r, const std::string& label)
{
    auto [d_K, f0] = split_discriminant(r.q0.discriminant());
    std::cout << "method       " << label << '\n'
              << "target       " << r.n << "*" << r.q0 << "  d_K=" << d_K << " f0=" << f0 << '\n'
              << "delta_tilde  " << r.delta_tilde << '\n'
              << "delta        " << r.delta << '\n'
              << "delta0       " << r.delta0 << '\n';
    if (r.predicted)
        std::cout << "predicted    " << r.predicted->value << " (" << to_string(r.predicted->formula) << ")\n";
    if (r.possibly_incomplete)
        std::cout << "note         action sweep possibly incomplete for this target\n";
    std::cout << "conductors  ";
    for (const auto& [fp, count] : r.per_conductors())
        std::cout << " (" << fp.first << "," << fp.second << "):" << count;
    std::cout << '\n';
    for (const auto& p : r.pairs)
        std::cout << "  " << p.first.str() << " x " << p.second.str() << '\n';
}

struct SweepConfig {
    std::vector<long> d_K;
    long f0_max = 1;
    long n_max = 1;
    std::string method = "brute";
    std::string output;
    std::string format = "csv";
};

void run_sweep(const SweepConfig& cfg)
{
    if (cfg.d_K.empty())
        throw usage_error("verify-ma: at least one --dk is required");
    for (long d : cfg.d_K)
        if (!is_fundamental(d))
            throw math_error("verify-ma: " + std::to_string(d) + " is not a fundamental discriminant");
    bool with_action = cfg.method != "brute";
    std::vector<long> fields = cfg.d_K;
    std::sort(fields.begin(), fields.end(), std::greater<>());
    fields.erase(std::unique(fields.begin(), fields.end()), fields.end());

    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file)
            throw usage_error("cannot open output file " + cfg.output);
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;

    ordered_json rows = ordered_json::array();
    if (cfg.format == "csv") {
        out << "d_K,f0,Q0,n,delta_tilde,predicted,formula,match";
        if (with_action)
            out << ",action_delta_tilde,action_complete";
        out << '\n';
    }
    std::size_t mismatches = 0;
    for (long d : fields) {
        SurvivorCache cache;
        for (const auto& row : verify_ma(d, cfg.f0_max, cfg.n_max, &cache)) {
            mismatches += row.match() ? 0 : 1;
            std::optional<DecompositionReport> act;
            if (with_action)
                act = classify_via_action(row.n, row.q0);
            if (cfg.format == "csv") {
                out << row.d_K << ',' << row.f0 << ",\"" << text_form(row.q0) << "\"," << row.n << ',' << row.delta_tilde
                    << ',' << row.predicted.value << ',' << to_string(row.predicted.formula) << ','
                    << (row.match() ? "true" : "false");
                if (act)
                    out << ',' << act->delta_tilde << ',' << (act->possibly_incomplete ? "false" : "true");
                out << '\n';
            } else {
                ordered_json j{{"d_K", jint(row.d_K)},
                               {"f0", jint(row.f0)},
                               {"Q0", jform(row.q0)},
                               {"n", jint(row.n)},
                               {"delta_tilde", row.delta_tilde},
                               {"predicted", jint(row.predicted.value)},
                               {"formula", to_string(row.predicted.formula)},
                               {"match", row.match()}};
                if (act) {
                    j["action_delta_tilde"] = act->delta_tilde;
                    j["action_complete"] = !act->possibly_incomplete;
                }
                rows.push_back(j);
            }
        }
    }
    if (cfg.format == "json")
        out << ordered_json{{"rows", rows}, {"mismatches", mismatches}}.dump(2) << '\n';
    if (!cfg.output.empty())
        std::cout << "mismatches " << mismatches << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Class groups, generalized composition and decompositions of singular abelian surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cmsurf 1.0.0");
    // options may follow the subcommand; a config file sets subcommand options
    // from a [subcommand] section, e.g. [verify-ma]
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file of option values");

    std::string form, form1, form2, surface;
    std::string n_s = "1", disc_s, dk_s, f_s = "1", f0_s = "1", scale1_s = "1", scale2_s = "1";
    std::vector<std::string> subs;
    std::string method = "brute";
    bool json = false;
    unsigned precision = default_precision_bits;
    int digits = 30;

    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a positive definite form");
    reduce_cmd->add_option("--form", form, "a,b,c")->required();

    auto* cg_cmd = app.add_subcommand("classgroup", "Enumerate the class group C(D)");
    cg_cmd->add_option("--disc", disc_s, "discriminant D < 0")->required();

    auto* cn_cmd = app.add_subcommand("classnumber", "Class number of the order of conductor f");
    cn_cmd->add_option("--dk", dk_s, "fundamental discriminant")->required();
    cn_cmd->add_option("--f", f_s, "conductor");

    auto* comp_cmd = app.add_subcommand("compose", "Dirichlet composition in C(D)");
    comp_cmd->add_option("--form1", form1, "a,b,c")->required();
    comp_cmd->add_option("--form2", form2, "a,b,c")->required();

    auto* gc_cmd = app.add_subcommand("gcompose", "Composition across conductors of one field");
    gc_cmd->add_option("--form1", form1, "a,b,c")->required();
    gc_cmd->add_option("--form2", form2, "a,b,c")->required();

    auto* lift_cmd = app.add_subcommand("lift", "Lift a class of C(D0) to C(D)");
    lift_cmd->add_option("--form", form, "a,b,c in C(D0)")->required();
    lift_cmd->add_option("--disc", disc_s, "target discriminant D")->required();

    auto* stab_cmd = app.add_subcommand("stab", "Stabilizer of C(D0) in C(D), or the intersection of two");
    stab_cmd->add_option("--disc", disc_s, "discriminant D")->required();
    stab_cmd->add_option("--sub", subs, "D0 (give twice for an intersection)")->required()->expected(1, 2);

    auto* tl_cmd = app.add_subcommand("tlattice", "Oriented transcendental lattice of a product surface");
    tl_cmd->add_option("--form1", form1, "a,b,c");
    tl_cmd->add_option("--scale1", scale1_s, "s");
    tl_cmd->add_option("--form2", form2, "a,b,c");
    tl_cmd->add_option("--scale2", scale2_s, "t");
    tl_cmd->add_option("--surface", surface, "a,b,c: the surface E_tau x E_(a tau + b)");

    auto* dec_cmd = app.add_subcommand("decompose", "Decompositions of the surface with T = n Q0");
    dec_cmd->add_option("--n", n_s, "scale n >= 1");
    dec_cmd->add_option("--form", form, "primitive Q0 as a,b,c")->required();
    dec_cmd->add_option("--method", method, "brute, action or both")
        ->check(CLI::IsMember({"brute", "action", "both"}));

    SweepConfig sweep;
    auto* ma_cmd = app.add_subcommand("verify-ma", "Sweep brute-force counts against the closed forms");
    ma_cmd->add_option("--dk", sweep.d_K, "fundamental discriminant (repeatable)");
    ma_cmd->add_option("--f0-max", sweep.f0_max, "largest conductor of Q0")->check(CLI::PositiveNumber);
    ma_cmd->add_option("--n-max", sweep.n_max, "largest n")->check(CLI::PositiveNumber);
    ma_cmd->add_option("--method", sweep.method, "brute, action or both")
        ->check(CLI::IsMember({"brute", "action", "both"}));
    ma_cmd->add_option("--output", sweep.output, "write the table to this file");
    ma_cmd->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sum_cmd = app.add_subcommand("verify-sum", "Class number sum identity over conductor pairs");
    sum_cmd->add_option("--dk", dk_s, "fundamental discriminant")->required();
    sum_cmd->add_option("--f0", f0_s, "conductor f0");
    sum_cmd->add_option("--n", n_s, "n");

    auto* si_cmd = app.add_subcommand("shioda-inose", "Fibration models from each decomposition");
    si_cmd->add_option("--n", n_s, "scale n >= 1");
    si_cmd->add_option("--form", form, "primitive Q0 as a,b,c")->required();
    si_cmd->add_option("--precision", precision, "working precision in bits")->check(CLI::Range(64u, 65536u));
    si_cmd->add_option("--digits", digits, "significant digits printed")->check(CLI::Range(5, 1000));

    for (auto* sub : app.get_subcommands({}))
        sub->add_flag("--json", json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*reduce_cmd) {
            auto r = reduce(parse_form(form));
            if (json)
                emit({{"form", jform(r.form)},
                      {"map", {{jint(r.map.p), jint(r.map.q)}, {jint(r.map.r), jint(r.map.s)}}}});
            else
                std::cout << text_form(r.form) << '\n';
        } else if (*cg_cmd) {
            ClassGroup g(parse_int(disc_s, "--disc"));
            ordered_json forms = ordered_json::array(), structure = ordered_json::array();
            for (const auto& x : g.elements())
                forms.push_back(jform(x.repr));
            for (const auto& s : g.structure())
                structure.push_back(jint(s));
            emit({{"D", jint(g.discriminant())}, {"h", g.order()}, {"forms", forms}, {"structure", structure}});
        } else if (*cn_cmd) {
            Int d_K = parse_int(dk_s, "--dk"), f = parse_int(f_s, "--f");
            Int h = class_number_formula(d_K, f);
            if (json)
                emit({{"d_K", jint(d_K)}, {"f", jint(f)}, {"h", jint(h)}});
            else
                std::cout << h << '\n';
        } else if (*comp_cmd) {
            auto c = compose(parse_form(form1), parse_form(form2));
            if (json)
                emit({{"D", jint(c.D)}, {"class", jform(c.repr)}});
            else
                std::cout << text_form(c.repr) << '\n';
        } else if (*gc_cmd) {
            auto x = ExtendedClass::of(make_class(parse_form(form1)));
            auto y = ExtendedClass::of(make_class(parse_form(form2)));
            if (x.d_K != y.d_K)
                throw math_error("gcompose: forms belong to different fields");
            auto m = gcompose(x, y), f = gcompose_via_forms(x, y);
            emit({{"d_K", jint(x.d_K)},
                  {"modules", jcurve(m)},
                  {"forms", jcurve(f)},
                  {"agree", m == f}});
        } else if (*lift_cmd) {
            auto base = make_class(parse_form(form));
            auto lifted = lift_class(base, parse_int(disc_s, "--disc"));
            auto check = gcompose(ExtendedClass::of(lifted), ExtendedClass::principal(split_discriminant(base.D).d_K,
                                                                                    split_discriminant(base.D).f));
            emit({{"D0", jint(base.D)},
                  {"base", jform(base.repr)},
                  {"D", jint(lifted.D)},
                  {"lift", jform(lifted.repr)},
                  {"verified", check == ExtendedClass::of(base)}});
        } else if (*stab_cmd) {
            Int D = parse_int(disc_s, "--disc");
            StabilizerSubgroup s;
            ordered_json out{{"D", jint(D)}};
            if (subs.size() == 1) {
                Int D0 = parse_int(subs[0], "--sub");
                s = stabilizer(D, D0);
                out["D0"] = jint(D0);
                out["expected_order"] = class_number(D) / class_number(D0);
            } else {
                Int D1 = parse_int(subs[0], "--sub"), D2 = parse_int(subs[1], "--sub");
                s = stab_intersection(D, D1, D2);
                out["D1"] = jint(D1);
                out["D2"] = jint(D2);
            }
            ordered_json members = ordered_json::array();
            for (const auto& u : s.members)
                members.push_back(jform(u.repr));
            out["order"] = s.order();
            out["members"] = members;
            emit(out);
        } else if (*tl_cmd) {
            std::pair<KPoint, KPoint> pts;
            if (!surface.empty()) {
                if (!form1.empty() || !form2.empty())
                    throw usage_error("tlattice: give either --surface or --form1/--form2");
                pts = surface_from_form(parse_form(surface));
            } else {
                if (form1.empty() || form2.empty())
                    throw usage_error("tlattice: --form1 and --form2 are required without --surface");
                pts = {scale(cm_point(parse_form(form1)), parse_int(scale1_s, "--scale1")),
                       scale(cm_point(parse_form(form2)), parse_int(scale2_s, "--scale2"))};
            }
            auto T = transcendental_lattice(pts.first, pts.second);
            ordered_json gram = ordered_json::array();
            for (const auto& row : T.gram)
                gram.push_back({jint(row[0]), jint(row[1])});
            emit({{"gram", gram}, {"form", jform(T.form())}, {"content", jint(content(T.form()).m)}, {"oriented", true}});
        } else if (*dec_cmd) {
            Int n = parse_int(n_s, "--n");
            QuadraticForm q0 = parse_form(form);
            std::optional<DecompositionReport> brute, act;
            if (method != "action")
                brute = enumerate_decompositions(n, q0);
            if (method != "brute")
                act = classify_via_action(n, q0);
            if (json) {
                ordered_json out = report_json(brute ? *brute : *act);
                out["method"] = method;
                if (brute && act) {
                    out["action_delta_tilde"] = act->delta_tilde;
                    out["action_equals_brute"] = act->pairs == brute->pairs;
                    out["action_possibly_incomplete"] = act->possibly_incomplete;
                }
                emit(out);
            } else {
                if (brute)
                    report_text(*brute, "brute");
                if (act)
                    report_text(*act, "action");
                if (brute && act)
                    std::cout << "agreement    " << (act->pairs == brute->pairs ? "equal" : "action is a proper subset")
                              << '\n';
            }
        } else if (*ma_cmd) {
            run_sweep(sweep);
        } else if (*sum_cmd) {
            Int d_K = parse_int(dk_s, "--dk"), f0 = parse_int(f0_s, "--f0"), n = parse_int(n_s, "--n");
            auto v = verify_sum_identity(d_K, f0, n);
            if (json)
                emit({{"d_K", jint(d_K)}, {"f0", jint(f0)}, {"n", jint(n)}, {"result", v ? ordered_json(*v) : ordered_json()}});
            else
                std::cout << (v ? (*v ? "true" : "false") : "skipped") << '\n';
        } else if (*si_cmd) {
            Int n = parse_int(n_s, "--n");
            QuadraticForm q0 = parse_form(form);
            auto models = shioda_inose_models(n, q0, precision);
            PrecisionScope scope(precision + 32);
            ordered_json list = ordered_json::array();
            for (const auto& m : models)
                list.push_back({{"first", jcurve(m.first)},
                                {"second", jcurve(m.second)},
                                {"j1", jcomplex(m.j1.value, digits)},
                                {"j2", jcomplex(m.j2.value, digits)},
                                {"A", jcomplex(m.A, digits)},
                                {"B", jcomplex(m.B, digits)},
                                {"error_bound", jreal(m.error_bound, 6)},
                                {"fibration", m.fibration(digits)}});
            emit({{"n", jint(n)}, {"Q0", jform(reduced(q0))}, {"precision", precision}, {"models", list}});
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const math_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
