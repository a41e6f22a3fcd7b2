#include "ipb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ipb/consistency.hpp"
#include "ipb/document.hpp"
#include "ipb/expression.hpp"
#include "ipb/jensen.hpp"
#include "ipb/oracle.hpp"
#include "ipb/report_json.hpp"
#include "ipb/tailbounds.hpp"

namespace ipb::cli {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json target_json(const std::string& expr, PrevisionSide side) {
    Json t;
    t["expr"] = expr;
    t["side"] = prevision_side_name(side);
    return t;
}

Json tail_report_json(const TailBoundReport& r, const std::string& target_expr) {
    Json j;
    j["inequality"] = r.inequality_id;
    j["event"] = r.event_description;
    j["bound"] = r.bound;
    j["direction"] = direction_symbol(r.direction);
    j["target"] = target_json(target_expr, r.prob_side);
    j["consistency_required"] = consistency_level_name(r.consistency_required);
    j["assumptions"] = r.assumptions_checked;
    j["vacuous"] = r.vacuous;
    return j;
}

Json jensen_report_json(const JensenReport& r, const std::string& target_expr) {
    Json j;
    j["fired"] = r.fired;
    j["event"] = r.target;
    if (r.bound.has_value()) {
        j["bound"] = *r.bound;
    } else {
        j["bound"] = nullptr;
    }
    j["direction"] = direction_symbol(r.direction);
    if (r.side.has_value()) {
        j["target"] = target_json(target_expr, *r.side);
    }
    j["applicable"] = r.applicable;
    j["tightest"] = r.tightest;
    j["assumptions"] = r.assumptions_checked;
    return j;
}

struct CommandContext {
    std::ostream& out;
    std::ostream& err;
};

int emit(const CommandContext& ctx, const Json& report, const std::string& summary,
         int exit_code) {
    write_json(ctx.out, report);
    ctx.err << summary << "\n";
    return exit_code;
}

int cmd_check(const CommandContext& ctx, const std::string& file, const std::string& level) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    ConsistencyReport report;
    if (level == "asl") {
        report = check_asl(a);
    } else if (level == "coherence") {
        report = check_coherence(a);
    } else {
        report = check_2coherence(a);
    }
    Json j;
    j["schema"] = 1;
    j["command"] = "check";
    j["level"] = level;
    j["pass"] = report.pass;
    if (!report.witness_probability.empty()) {
        j["witness_probability"] = report.witness_probability;
    }
    if (!report.envelope_gaps.empty()) {
        Json gaps = Json::object();
        for (const auto& [name, gap] : report.envelope_gaps) gaps[name] = gap;
        j["envelope_gaps"] = std::move(gaps);
    }
    if (report.failing_pair.has_value()) {
        Json p;
        p["x0"] = report.failing_pair->x0;
        p["x1"] = report.failing_pair->x1;
        p["s0"] = report.failing_pair->s0;
        p["s1"] = report.failing_pair->s1;
        p["t"] = report.failing_pair->t;
        j["failing_pair"] = std::move(p);
    }
    if (!report.note.empty()) j["note"] = report.note;
    return emit(ctx, j, std::string(level) + ": " + (report.pass ? "PASS" : "FAIL"),
                report.pass ? 0 : 1);
}

int cmd_extend(const CommandContext& ctx, const std::string& file, const std::string& expr,
               bool want_max) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    const Gamble y = evaluate_expression(expr, doc);
    const double value = want_max ? upper_extension(a, y) : natural_extension(a, y);
    Json j;
    j["schema"] = 1;
    j["command"] = "extend";
    j["expr"] = expr;
    j["sense"] = want_max ? "max" : "min";
    j["value"] = value;
    j["direction"] = "==";
    j["target"] = target_json(expr, want_max ? PrevisionSide::Upper : PrevisionSide::Lower);
    j["bound"] = value;
    std::ostringstream s;
    s << (want_max ? "upper extension" : "natural extension") << " of " << expr << " = " << value;
    return emit(ctx, j, s.str(), 0);
}

struct EnvelopeValues {
    double lprX;
    double uprX;
};

EnvelopeValues envelopes_of(const Assessment& a, const Gamble& x) {
    return EnvelopeValues{natural_extension(a, x), upper_extension(a, x)};
}

int cmd_bound_jensen(const CommandContext& ctx, const std::string& file, const std::string& x,
                     int power, bool improved) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    if (doc.find_gamble(x) == nullptr) {
        raise(Errc::unknown_identifier, "unknown gamble '" + x + "'");
    }
    // The assessment entry may be absent when only an upper was assessed;
    // moment_inference needs the named entry, so resolve through it.
    Assessment effective = a;
    if (a.find(x) == nullptr) {
        const Gamble g(doc.partition(), *doc.find_gamble(x));
        effective.add_lower(x, g, g.min_value()); // vacuous lower, harmless
    }
    const MomentInference inf = moment_inference(effective, x, power);
    const std::string expr = x + "^" + std::to_string(power);

    Json j;
    j["schema"] = 1;
    j["command"] = improved ? "bound improved-jensen" : "bound jensen";
    j["x"] = x;
    j["power"] = power;
    j["lpr_x"] = inf.lprX;
    j["upr_x"] = inf.uprX;
    j["exact_lower"] = inf.exact_lower;
    j["exact_upper"] = inf.exact_upper;

    std::ostringstream summary;
    int code = 0;
    if (improved) {
        const ImprovedJensenReport& r = inf.improved;
        if (r.m1.has_value()) {
            Json m;
            m["bound"] = *r.m1;
            m["direction"] = direction_symbol(r.side == PrevisionSide::Upper
                                                  ? BoundDirection::GreaterEq
                                                  : BoundDirection::LessEq);
            m["target"] = target_json(expr, PrevisionSide::Lower);
            j["m1"] = std::move(m);
        }
        if (r.m2.has_value()) {
            Json m;
            m["bound"] = *r.m2;
            m["direction"] = direction_symbol(r.side == PrevisionSide::Upper
                                                  ? BoundDirection::GreaterEq
                                                  : BoundDirection::LessEq);
            m["target"] = target_json(expr, PrevisionSide::Upper);
            j["m2"] = std::move(m);
        }
        if (r.combined.has_value()) {
            Json m;
            m["bound"] = *r.combined;
            m["direction"] = direction_symbol(r.side == PrevisionSide::Upper
                                                  ? BoundDirection::GreaterEq
                                                  : BoundDirection::LessEq);
            m["target"] = target_json(expr, r.side);
            j["combined"] = std::move(m);
        }
        j["side"] = prevision_side_name(r.side);
        j["reasons"] = r.reasons;
        summary << "improved bounds on " << expr << ":";
        if (r.m1) summary << " m1=" << *r.m1;
        if (r.m2) summary << " m2=" << *r.m2;
        if (r.combined) summary << " combined=" << *r.combined;
    } else {
        Json reports = Json::array();
        for (const auto& r : inf.jensen) {
            reports.push_back(jensen_report_json(r, expr));
        }
        j["reports"] = std::move(reports);
        summary << "plug-in bounds on " << expr << " (exact envelope [" << inf.exact_lower << ", "
                << inf.exact_upper << "])";
    }
    return emit(ctx, j, summary.str(), code);
}

int cmd_bound_markov(const CommandContext& ctx, const std::string& file, const std::string& x,
                     double a_threshold, const std::string& side) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    const Gamble g = evaluate_expression(x, doc);
    const bool nonneg = g.min_value() >= 0.0;
    const EnvelopeValues env = envelopes_of(a, g);
    TailBoundReport report =
        side == "upper" ? markov_upper(env.uprX, a_threshold, nonneg)
                        : markov_lower(env.lprX, a_threshold, nonneg);
    std::ostringstream desc;
    desc << (side == "upper" ? "upr" : "lpr") << "(" << x << " >= " << a_threshold << ")";
    report.event_description = desc.str();
    const std::string expr = "ind(" + x + " >= " + fmt17(a_threshold) + ")";
    Json j;
    j["schema"] = 1;
    j["command"] = "bound markov";
    j["x"] = x;
    j["a"] = a_threshold;
    j["report"] = tail_report_json(report, expr);
    std::ostringstream s;
    s << report.event_description << " " << direction_symbol(report.direction) << " "
      << report.bound;
    return emit(ctx, j, s.str(), 0);
}

int cmd_bound_cantelli(const CommandContext& ctx, const std::string& file, const std::string& x,
                       const std::string& c_spec, const std::string& eps_spec,
                       const std::string& side) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    const Gamble g = evaluate_expression(x, doc);
    const EnvelopeValues env = envelopes_of(a, g);

    double c;
    if (c_spec == "lpr") {
        c = env.lprX;
    } else if (c_spec == "upr") {
        c = env.uprX;
    } else if (c_spec == "mid") {
        c = 0.5 * (env.lprX + env.uprX);
    } else {
        try {
            c = std::stod(c_spec);
        } catch (const std::exception&) {
            raise(Errc::parse_error, "--c expects a number or lpr|upr|mid");
        }
    }

    EpsChoice eps;
    if (eps_spec == "auto3sigma") {
        eps = EpsChoice::three_sigma();
    } else {
        try {
            eps = EpsChoice::of(std::stod(eps_spec));
        } catch (const std::exception&) {
            raise(Errc::parse_error, "--eps expects a number or auto3sigma");
        }
    }

    Assessment effective = a;
    if (a.find(x) == nullptr) {
        effective.add_lower(x, g, g.min_value());
    }
    const TailSide tail = side == "above" ? TailSide::Above : TailSide::Below;
    const TailBoundReport report = cantelli_imprecise(effective, x, c, eps, tail);
    const std::string cmp = tail == TailSide::Below ? " <= " : " >= ";
    const std::string expr = "ind(" + x + cmp + fmt17(report.threshold) + ")";
    Json j;
    j["schema"] = 1;
    j["command"] = "bound cantelli";
    j["x"] = x;
    j["c"] = c;
    j["eps"] = tail == TailSide::Below ? c - report.threshold : report.threshold - c;
    j["report"] = tail_report_json(report, expr);
    std::ostringstream s;
    s << report.event_description << " <= " << report.bound;
    return emit(ctx, j, s.str(), 0);
}

int cmd_bound_cantelli_coh(const CommandContext& ctx, const std::string& file,
                           const std::string& x, double eps) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    if (a.find(x) == nullptr) {
        raise(Errc::unknown_identifier, "cantelli-coh needs an assessed lower for '" + x + "'");
    }
    const auto reports = cantelli_coherent(a, x, eps);
    Json j;
    j["schema"] = 1;
    j["command"] = "bound cantelli-coh";
    j["x"] = x;
    j["eps"] = eps;
    Json arr = Json::array();
    for (const auto& r : reports) {
        const bool below = r.event_description.find("<=") != std::string::npos;
        const std::string expr =
            "ind(" + x + (below ? " <= " : " >= ") + fmt17(r.threshold) + ")";
        arr.push_back(tail_report_json(r, expr));
    }
    j["reports"] = std::move(arr);
    return emit(ctx, j, "four variance-based tail bounds emitted", 0);
}

int cmd_bound_chebyshev(const CommandContext& ctx, const std::string& file, const std::string& x,
                        double b, const std::string& center) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    const Gamble g = evaluate_expression(x, doc);
    const EnvelopeValues env = envelopes_of(a, g);
    const double centre_value = center == "upper" ? env.uprX : env.lprX;
    const Gamble dev2 = (g - centre_value) * (g - centre_value);
    const double dev2_upper = upper_extension(a, dev2);
    const TailBoundReport report = chebyshev_like(
        dev2_upper, b, center == "upper" ? CenterKind::Upper : CenterKind::Lower);
    const std::string expr =
        "ind(abs(" + x + " - " + fmt17(centre_value) + ") >= " + fmt17(b) + ")";
    Json j;
    j["schema"] = 1;
    j["command"] = "bound chebyshev";
    j["x"] = x;
    j["b"] = b;
    j["center"] = centre_value;
    j["dev2_upper"] = dev2_upper;
    j["report"] = tail_report_json(report, expr);
    std::ostringstream s;
    s << report.event_description << " <= " << report.bound;
    return emit(ctx, j, s.str(), 0);
}

int cmd_variance(const CommandContext& ctx, const std::string& file, const std::string& x) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    if (a.find(x) == nullptr) {
        raise(Errc::unknown_identifier, "variance needs an assessed lower for '" + x + "'");
    }
    const VarianceReport r = variances(a, x);
    Json j;
    j["schema"] = 1;
    j["command"] = "variance";
    j["x"] = x;
    j["lower_variance"] = r.lower_variance;
    j["upper_variance"] = r.upper_variance;
    j["argmin_c_lower"] = r.argmin_c_lower;
    j["argmin_c_upper"] = r.argmin_c_upper;
    j["witness_p1"] = r.witness_p1;
    j["coherent"] = r.coherent;
    j["method_notes"] = r.method_notes;
    std::ostringstream s;
    s << "lower variance " << r.lower_variance << ", upper variance " << r.upper_variance;
    return emit(ctx, j, s.str(), 0);
}

int cmd_compare(const CommandContext& ctx, const std::string& file, const std::string& x,
                double eps) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();
    if (a.find(x) == nullptr) {
        raise(Errc::unknown_identifier, "compare needs an assessed lower for '" + x + "'");
    }
    const Gamble& g = a.at(x).gamble;
    const EnvelopeValues env = envelopes_of(a, g);
    const VarianceReport vr = variances(a, x);
    const ComparisonReport r =
        compare_markov_cantelli(env.lprX, env.uprX, vr.lower_variance, eps,
                                g.min_value() >= 0.0);
    Json j;
    j["schema"] = 1;
    j["command"] = "compare";
    j["x"] = x;
    j["eps"] = eps;
    j["delta"] = r.delta;
    j["eps2"] = r.eps2;
    j["markov_bound"] = r.markov_bound;
    j["cantelli_bound"] = r.cantelli_bound;
    j["cantelli_preferred"] = r.cantelli_preferred;
    j["markov_sufficient"] = r.markov_sufficient;
    j["rule"] = r.preferred_for_eps;
    std::ostringstream s;
    s << (r.cantelli_preferred ? "variance bound preferred" : "first-moment bound preferred")
      << " at eps = " << eps;
    return emit(ctx, j, s.str(), 0);
}

int cmd_verify(const CommandContext& ctx, const std::string& file, const std::string& report_path) {
    const AssessmentDocument doc = load_document(file);
    const Assessment a = doc.to_assessment();

    std::ifstream in(report_path, std::ios::binary);
    if (!in) {
        raise(Errc::parse_error, "cannot open '" + report_path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Json report;
    try {
        report = Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        raise(Errc::parse_error, std::string("invalid report JSON: ") + e.what());
    }

    // Collect every object carrying {target, bound, direction}.
    std::vector<Json> claims;
    std::function<void(const Json&)> walk = [&](const Json& node) {
        if (node.is_object()) {
            if (node.contains("target") && node.contains("bound") && node.contains("direction") &&
                !node["bound"].is_null()) {
                claims.push_back(node);
            }
            for (const auto& [_, child] : node.items()) walk(child);
        } else if (node.is_array()) {
            for (const auto& child : node) walk(child);
        }
    };
    walk(report);
    if (claims.empty()) {
        raise(Errc::schema_error, "the report contains no verifiable claims");
    }

    Json certs = Json::array();
    bool all_valid = true;
    for (const auto& claim : claims) {
        const std::string expr = claim["target"]["expr"].get<std::string>();
        const std::string side_name = claim["target"]["side"].get<std::string>();
        const std::string dir = claim["direction"].get<std::string>();
        const double bound = claim["bound"].get<double>();
        const Gamble target = evaluate_expression(expr, doc);
        const PrevisionSide side =
            side_name == "upper" ? PrevisionSide::Upper : PrevisionSide::Lower;

        Certificate cert;
        if (dir == "==") {
            cert = certify_value(a, target, side, BoundDirection::LessEq, bound, expr);
            cert.slack = -std::abs(bound - cert.exact);
            cert.valid = cert.slack >= -certificate_slack_tol;
        } else {
            cert = certify_value(a, target, side,
                                 dir == "<=" ? BoundDirection::LessEq : BoundDirection::GreaterEq,
                                 bound, expr);
        }
        all_valid = all_valid && cert.valid;
        Json cj;
        cj["target"] = claim["target"];
        cj["direction"] = dir;
        cj["bound"] = bound;
        cj["exact"] = cert.exact;
        cj["slack"] = cert.slack;
        cj["valid"] = cert.valid;
        certs.push_back(std::move(cj));
    }
    Json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["certificates"] = std::move(certs);
    j["valid"] = all_valid;
    return emit(ctx, j,
                all_valid ? "all claims dominated by the exact envelopes"
                          : "some claim violates its exact envelope",
                all_valid ? 0 : 1);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bounds and consistency checks for lower/upper previsions on finite spaces"};
    app.require_subcommand(1);

    std::string file;
    std::string level = "coherence";
    std::string expr;
    bool want_max = false;
    std::string x_name;
    int power = 2;
    double a_threshold = 1.0;
    std::string side = "lower";
    std::string tail_side = "below";
    std::string c_spec = "lpr";
    std::string eps_spec;
    double eps = 1.0;
    double b_threshold = 1.0;
    std::string center = "lower";
    std::string report_path;

    CLI::App* check = app.add_subcommand("check", "consistency verdict for an assessment");
    check->add_option("file", file)->required();
    check->add_option("--level", level)
        ->check(CLI::IsMember({"asl", "coherence", "2coherence"}))
        ->capture_default_str();

    CLI::App* extend = app.add_subcommand("extend", "natural extension of the assessment");
    extend->add_option("file", file)->required();
    extend->add_option("--expr", expr)->required();
    extend->add_flag("--max", want_max, "upper extension instead of lower");

    CLI::App* bound = app.add_subcommand("bound", "inequality bounds");
    bound->require_subcommand(1);

    CLI::App* jensen = bound->add_subcommand("jensen", "plug-in moment bounds");
    jensen->add_option("file", file)->required();
    jensen->add_option("--x", x_name)->required();
    jensen->add_option("--power", power)->capture_default_str();

    CLI::App* improved = bound->add_subcommand("improved-jensen", "chord-improved moment bounds");
    improved->add_option("file", file)->required();
    improved->add_option("--x", x_name)->required();
    improved->add_option("--power", power)->capture_default_str();

    CLI::App* markov = bound->add_subcommand("markov", "first-moment tail bound");
    markov->add_option("file", file)->required();
    markov->add_option("--x", x_name)->required();
    markov->add_option("--a", a_threshold)->required();
    markov->add_option("--side", side)->check(CLI::IsMember({"lower", "upper"}));

    CLI::App* cantelli = bound->add_subcommand("cantelli", "one-sided second-moment bound");
    cantelli->add_option("file", file)->required();
    cantelli->add_option("--x", x_name)->required();
    cantelli->add_option("--c", c_spec, "number or lpr|upr|mid")->capture_default_str();
    cantelli->add_option("--eps", eps_spec, "number or auto3sigma")->required();
    cantelli->add_option("--side", tail_side)->check(CLI::IsMember({"below", "above"}));

    CLI::App* cantelli_coh =
        bound->add_subcommand("cantelli-coh", "variance-based tail bounds (coherence)");
    cantelli_coh->add_option("file", file)->required();
    cantelli_coh->add_option("--x", x_name)->required();
    cantelli_coh->add_option("--eps", eps)->required();

    CLI::App* chebyshev = bound->add_subcommand("chebyshev", "two-sided deviation bound");
    chebyshev->add_option("file", file)->required();
    chebyshev->add_option("--x", x_name)->required();
    chebyshev->add_option("--b", b_threshold)->required();
    chebyshev->add_option("--center", center)->check(CLI::IsMember({"lower", "upper"}));

    CLI::App* variance = app.add_subcommand("variance", "lower and upper variance");
    variance->add_option("file", file)->required();
    variance->add_option("--x", x_name)->required();

    CLI::App* compare = app.add_subcommand("compare", "first-moment vs variance tail bound");
    compare->add_option("file", file)->required();
    compare->add_option("--x", x_name)->required();
    compare->add_option("--eps", eps)->required();

    CLI::App* verify = app.add_subcommand("verify", "re-check a report against the envelopes");
    verify->add_option("file", file)->required();
    verify->add_option("--report", report_path)->required();

    std::vector<const char*> argv;
    argv.push_back("ipbounds");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const CommandContext ctx{out, err};
    try {
        if (check->parsed()) return cmd_check(ctx, file, level);
        if (extend->parsed()) return cmd_extend(ctx, file, expr, want_max);
        if (bound->parsed()) {
            if (jensen->parsed()) return cmd_bound_jensen(ctx, file, x_name, power, false);
            if (improved->parsed()) return cmd_bound_jensen(ctx, file, x_name, power, true);
            if (markov->parsed()) return cmd_bound_markov(ctx, file, x_name, a_threshold, side);
            if (cantelli->parsed())
                return cmd_bound_cantelli(ctx, file, x_name, c_spec, eps_spec, tail_side);
            if (cantelli_coh->parsed()) return cmd_bound_cantelli_coh(ctx, file, x_name, eps);
            if (chebyshev->parsed())
                return cmd_bound_chebyshev(ctx, file, x_name, b_threshold, center);
        }
        if (variance->parsed()) return cmd_variance(ctx, file, x_name);
        if (compare->parsed()) return cmd_compare(ctx, file, x_name, eps);
        if (verify->parsed()) return cmd_verify(ctx, file, report_path);
        err << "no command selected\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        switch (e.code()) {
            case Errc::empty_credal_set:
            case Errc::empty_constrained_credal_set:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ipb::cli
