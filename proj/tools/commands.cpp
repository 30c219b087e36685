#include "commands.hpp"

#include "opc/coherence.hpp"
#include "opc/companion.hpp"
#include "opc/errors.hpp"
#include "opc/sobolev.hpp"

#include <algorithm>
#include <set>

namespace cli {

namespace {

using opc::Error;
using opc::ErrorKind;
using opc::Poly;

[[noreturn]] void config_error(const std::string& what, const std::string& detail = {}) {
    throw Error(ErrorKind::ConfigError, what, std::nullopt, detail);
}

const FunctionalSpec& need(const std::optional<FunctionalSpec>& f, const char* key) {
    if (!f) config_error(std::string("config.") + key + " is given");
    return *f;
}

const FunctionalSpec& primary(const RunConfig& c) {
    for (const auto* f : {&c.functional, &c.u, &c.u1, &c.u0})
        if (*f) return **f;
    config_error("config names a functional (functional, u, u1 or u0)");
}

Rational initial(const RunConfig& c, const std::string& key) {
    auto it = c.initials.find(key);
    if (it == c.initials.end()) config_error("initials." + key + " is given");
    return it->second;
}

std::optional<Rational> maybe_initial(const RunConfig& c, const std::string& key) {
    auto it = c.initials.find(key);
    if (it == c.initials.end()) return std::nullopt;
    return it->second;
}

void allow_initials(const RunConfig& c, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : c.initials)
        if (!allowed.count(key)) config_error("initial is used by case " + c.kind, key);
}

std::vector<Rational> sequence(const RunConfig& c, const std::string& name, std::size_t length) {
    auto it = c.sequences.find(name);
    if (it == c.sequences.end()) config_error("sequences." + name + " is given");
    if (it->second.size() < length)
        config_error("sequences." + name + " has at least " + std::to_string(length) + " entries",
                     std::to_string(it->second.size()));
    return {it->second.begin(), it->second.begin() + static_cast<long>(length)};
}

// Recurrence from explicit sequences when present, otherwise from a functional's MOPS.
opc::Recurrence recurrence_source(const RunConfig& c, const char* first, const char* second,
                                  const std::optional<FunctionalSpec>& f, const char* key, std::size_t length) {
    if (c.sequences.count(first) || c.sequences.count(second))
        return opc::Recurrence{sequence(c, first, length), sequence(c, second, length), c.convention}.to(
            opc::Convention::Std);
    if (!f) config_error(std::string("sequences.") + first + " or config." + key + " is given");
    return opc::Mops::generate(f->build(), static_cast<int>(length) - 1).recurrence();
}

json describe(const FunctionalSpec& f) { return f.build().describe(); }

void add_annotations(Report& r, const RunConfig& c) {
    if (!c.annotations.empty()) r.summary["annotations"] = c.annotations;
}

opc::LinearRelationPins sobolev_pins(const RunConfig& c) {
    opc::LinearRelationPins p;
    for (const auto& [key, value] : c.pins) {
        auto [name, k] = split_indexed(key);
        std::vector<std::optional<Rational>>* target = nullptr;
        if (name == "sigma_t") target = &p.sigma_t;
        else if (name == "tau_t") target = &p.tau_t;
        else if (name == "mu") target = &p.mu;
        else if (name == "theta") target = &p.theta;
        else config_error("pin is sigma_t|tau_t|mu|theta<index>", key);
        if (static_cast<int>(target->size()) <= k) target->resize(k + 1);
        (*target)[k] = value;
    }
    return p;
}

opc::RelationPins relation_pins(const RunConfig& c) {
    opc::RelationPins p;
    for (const auto& [key, value] : c.pins) {
        auto [name, k] = split_indexed(key);
        std::vector<std::optional<Rational>>* target = nullptr;
        if (name == "sigma") target = &p.sigma;
        else if (name == "tau") target = &p.tau;
        else if (name == "d") target = &p.d;
        else if (name == "e") target = &p.e;
        else config_error("pin is sigma|tau|d|e<index>", key);
        if (static_cast<int>(target->size()) <= k) target->resize(k + 1);
        (*target)[k] = value;
    }
    return p;
}

Report start(const std::string& command, const RunConfig& c) {
    Report r;
    r.command = command;
    r.config = c.source;
    return r;
}

json cell(const std::vector<Rational>& v, std::size_t k) {
    return k < v.size() ? rational_json(v[k]) : json("");
}

// ---- moments / recurrence ------------------------------------------------

Report cmd_moments(const RunConfig& c) {
    Report r = start("moments", c);
    const auto& f = primary(c);
    auto u = f.build();
    r.summary["functional"] = describe(f);
    add_annotations(r, c);
    r.columns = {"n", "moment"};
    for (int n = 0; n <= c.n_max; ++n) r.rows.push_back({n, rational_json(u.moment(n))});
    return r;
}

Report cmd_recurrence(const RunConfig& c) {
    Report r = start("recurrence", c);
    const auto& f = primary(c);
    auto m = opc::Mops::generate(f.build(), c.n_max);
    auto rec = m.recurrence(c.convention);
    r.summary["functional"] = describe(f);
    r.summary["convention"] = opc::convention_name(c.convention);
    add_annotations(r, c);
    r.columns = {"n", "b_n", "c_n", "p_n"};
    for (int n = 0; n <= c.n_max; ++n)
        r.rows.push_back({n, rational_json(rec.b[n]), rational_json(rec.c[n]), rational_json(m.norms()[n])});
    return r;
}

// ---- solvers ---------------------------------------------------------------

opc::SolveReport solve(const RunConfig& c) {
    const int N = c.n_max;
    const std::size_t len = static_cast<std::size_t>(N) + 2;
    opc::Normalization norm;
    if (auto v = maybe_initial(c, "c0")) norm.c0 = *v;
    if (auto v = maybe_initial(c, "gamma0")) norm.gamma0 = *v;
    if (c.kind == "1") {
        allow_initials(c, {"d0", "e0", "c0", "gamma0"});
        return opc::solve_case1(sequence(c, "sigma", len), sequence(c, "tau", len), initial(c, "d0"),
                                initial(c, "e0"), N, norm);
    }
    if (c.kind == "2") {
        allow_initials(c, {"sigma0", "d0", "e0", "gamma0"});
        auto q = recurrence_source(c, "b", "c", c.u ? c.u : c.functional, "u", len);
        return opc::solve_case2(q, initial(c, "sigma0"), initial(c, "d0"), initial(c, "e0"), N, norm);
    }
    if (c.kind == "3") {
        allow_initials(c, {"d0", "e0", "sigma0", "tau0", "c0"});
        auto r = recurrence_source(c, "beta", "gamma", c.u1 ? c.u1 : c.functional, "u1", len);
        return opc::solve_case3(r, initial(c, "d0"), maybe_initial(c, "e0"), initial(c, "sigma0"),
                                initial(c, "tau0"), N, norm);
    }
    if (c.kind == "4") {
        allow_initials(c, {"sigma0", "tau0", "c0", "gamma0"});
        return opc::solve_case4(sequence(c, "d", len), sequence(c, "e", len), initial(c, "sigma0"),
                                initial(c, "tau0"), N, norm);
    }
    if (c.pairs.size() != 2) config_error("pairs is given for case II");
    const std::size_t lenII = len + 1;
    opc::Group1Pair g1;
    std::vector<Rational> f1, s1, f2, s2;
    if (c.pairs[0] == "beta_gamma") {
        g1 = opc::Group1Pair::BetaGamma;
        auto r = recurrence_source(c, "beta", "gamma", c.u1, "u1", lenII);
        f1 = r.b;
        s1 = r.c;
    } else {
        g1 = opc::Group1Pair::DE;
        f1 = sequence(c, "d", lenII);
        s1 = sequence(c, "e", lenII);
    }
    opc::Group2Pair g2;
    if (c.pairs[1] == "b_c") {
        g2 = opc::Group2Pair::BC;
        auto q = recurrence_source(c, "b", "c", c.u, "u", lenII);
        f2 = q.b;
        s2 = q.c;
    } else {
        g2 = opc::Group2Pair::SigmaTau;
        f2 = sequence(c, "sigma", lenII);
        s2 = sequence(c, "tau", lenII);
    }
    return opc::solve_caseII(g1, f1, s1, g2, f2, s2, c.initials, N, norm);
}

void solve_summary(Report& r, const RunConfig& c, const opc::SolveReport& rep) {
    r.summary["case"] = c.kind;
    r.summary["convention"] = opc::convention_name(c.convention);
    r.summary["expected"] = opc::case_tag_name(rep.expected);
    r.summary["verdict"] = rep.verdict ? opc::case_tag_name(rep.verdict->tag) : "none";
    r.summary["valid"] = rep.valid;
    if (rep.verdict) r.summary["A_0"] = rational_json(rep.verdict->A0);
    if (!rep.valid) {
        r.summary["failure"] = rep.failure;
        r.summary["failure_index"] = rep.failure_index ? json(*rep.failure_index) : json(nullptr);
    }
    json notes = json::array();
    for (const auto& n : rep.notes) notes.push_back(n);
    r.summary["notes"] = notes;
    add_annotations(r, c);
}

Report cmd_solve(const RunConfig& c) {
    Report r = start("solve", c);
    const opc::SolveReport rep = solve(c);
    solve_summary(r, c, rep);
    const auto q = rep.coeffs.q.to(c.convention), rr = rep.coeffs.r.to(c.convention);
    const auto& cd = rep.coeffs.cd;
    r.columns = {"n", "b_n", "c_n", "beta_n", "gamma_n", "sigma_n", "tau_n", "d_n", "e_n", "A_n"};
    for (std::size_t n = 0; n < rep.coeffs.size(); ++n) {
        r.rows.push_back({static_cast<long>(n), cell(q.b, n), cell(q.c, n), cell(rr.b, n), cell(rr.c, n),
                          cell(cd.sigma, n), cell(cd.tau, n), cell(cd.d, n), cell(cd.e, n),
                          rep.structure ? cell(rep.structure->A, n) : json("")});
    }
    r.exit_code = rep.valid ? 0 : 4;
    return r;
}

// ---- relation fit ------------------------------------------------------------

json verdict_json(const opc::CoherenceData& cd, const opc::Recurrence& q, const opc::Recurrence& rr, int from) {
    try {
        auto v = opc::classify(opc::structure_coeffs(cd, q, rr), from);
        json out;
        out["tag"] = opc::case_tag_name(v.tag);
        out["from"] = from;
        out["detail"] = v.detail;
        return out;
    } catch (const Error& e) {
        json out;
        out["tag"] = "none";
        out["from"] = from;
        out["detail"] = e.what();
        return out;
    }
}

json free_columns(const opc::RelationFit& fit) {
    json free = json::array();
    for (const auto& f : fit.free)
        for (const auto& name : f) free.push_back(name);
    return free;
}

Report cmd_fit(const RunConfig& c) {
    Report r = start("fit", c);
    const int N = c.n_max;
    auto Qm = opc::Mops::generate(need(c.u, "u").build(), N);
    auto Rm = opc::Mops::generate(need(c.u1, "u1").build(), N);
    auto fit = opc::fit_relation(Rm.polys(), Qm.polys(), N, relation_pins(c));
    r.summary["u"] = describe(*c.u);
    r.summary["u1"] = describe(*c.u1);
    r.summary["exact"] = fit.exact();
    r.summary["three_term"] = fit.cd.three_term();
    r.summary["free"] = free_columns(fit);
    if (fit.exact() && N >= 6)
        r.summary["verdict"] = verdict_json(fit.cd, Qm.recurrence(), Rm.recurrence(), 5);
    add_annotations(r, c);
    r.columns = {"n", "sigma_n", "tau_n", "d_n", "e_n"};
    for (std::size_t n = 0; n < fit.cd.d.size(); ++n)
        r.rows.push_back({static_cast<long>(n), cell(fit.cd.sigma, n), cell(fit.cd.tau, n), cell(fit.cd.d, n),
                          cell(fit.cd.e, n)});
    r.exit_code = fit.exact() ? 0 : 4;
    return r;
}

// ---- Sobolev -----------------------------------------------------------------

Report cmd_sobolev(const RunConfig& c) {
    Report r = start("sobolev", c);
    if (!c.lambda) config_error("lambda is given");
    auto chk = opc::check_generalized_coherence(need(c.u0, "u0").build(), need(c.u1, "u1").build(), *c.lambda,
                                                c.n_max, sobolev_pins(c));
    r.summary["u0"] = describe(*c.u0);
    r.summary["u1"] = describe(*c.u1);
    r.summary["lambda"] = rational_json(*c.lambda);
    r.summary["relation_exact"] = chk.relation_exact;
    r.summary["coherent"] = chk.coherent;
    add_annotations(r, c);
    const auto& L = chk.link;
    r.columns = {"n", "sigma_t", "tau_t", "mu", "theta", "d_t", "e_t", "p_n", "s_n"};
    for (std::size_t n = 0; n < L.mu.size(); ++n) {
        // tau~, theta and e~ carry index n-1 in the relation at n; the row shows index n.
        r.rows.push_back({static_cast<long>(n), cell(L.sigma_t, n), cell(L.tau_t, n), cell(L.mu, n),
                          cell(L.theta, n), cell(L.d_t, n), cell(L.e_t, n), cell(chk.P.norms(), n),
                          cell(chk.basis.s_norms, n)});
    }
    r.exit_code = chk.relation_exact ? 0 : 4;
    return r;
}

// ---- companion -------------------------------------------------------------------

struct CompanionRun {
    opc::MomentFunctional u, u1;
    Poly A, D;
    std::vector<Rational> residuals;
    bool zero = true;
};

CompanionRun companion_run(const RunConfig& c) {
    if (!c.A || !c.D) config_error("A and D are given");
    allow_initials(c, {"m0", "m1"});
    auto u = need(c.u, "u").build();
    auto u1 = opc::companion_from_AD(u, *c.A, *c.D, initial(c, "m0"), initial(c, "m1"));
    CompanionRun run{u, u1, *c.A, *c.D, opc::verify_companion(u, u1, *c.A, *c.D, c.residual_depth), true};
    for (const auto& v : run.residuals)
        if (v != 0) run.zero = false;
    return run;
}

json delta_json(const opc::DeltaTerm& t) {
    json out;
    out["point"] = rational_json(t.point);
    out["order"] = t.order;
    out["weight"] = rational_json(t.weight);
    return out;
}

Report cmd_companion(const RunConfig& c) {
    Report r = start("companion", c);
    CompanionRun run = companion_run(c);
    const int N = c.n_max;
    r.summary["u"] = describe(*c.u);
    r.summary["A"] = rationals_json(run.A.coeffs());
    r.summary["D"] = rationals_json(run.D.coeffs());
    r.summary["m0"] = rational_json(run.u1.moment(0));
    r.summary["m1"] = rational_json(run.u1.moment(1));

    auto Rm = opc::Mops::generate(run.u1, N);
    auto Qm = opc::Mops::generate(run.u, N);
    auto rrec = Rm.recurrence();
    r.summary["gamma_0"] = rational_json(rrec.c[0]);
    r.summary["beta_0"] = rational_json(rrec.b[0]);

    auto fit = opc::fit_relation(Rm.polys(), Qm.polys(), N, relation_pins(c));
    r.summary["relation_exact"] = fit.exact();
    r.summary["three_term"] = fit.cd.three_term();
    // Low-degree columns are free; the verdict below is read for the pinned values.
    r.summary["free"] = free_columns(fit);
    if (fit.exact() && N >= 6) r.summary["verdict"] = verdict_json(fit.cd, Qm.recurrence(), rrec, 5);
    try {
        auto mk = opc::solve_Mk(fit.cd, run.A, run.u1, Rm.polys());
        r.summary["M0"] = rational_json(mk.M0);
        r.summary["M1"] = rational_json(mk.M1);
        r.summary["M2"] = rational_json(mk.M2);
        r.summary["AvQ2_expected"] = rational_json(mk.AvQ2_expected);
        r.summary["AvQ2_consistent"] = mk.AvQ2_consistent;
    } catch (const Error& e) {
        r.summary["Mk_error"] = e.what();
    }

    auto dec = opc::decompose_deltas(run.u, run.A, run.D, run.u1);
    if (dec.available) {
        r.summary["roots"] = rationals_json(dec.roots);
        r.summary["base"] = dec.base->describe();
        json deltas = json::array();
        for (const auto& t : dec.deltas) deltas.push_back(delta_json(t));
        r.summary["delta_terms"] = deltas;
    } else {
        r.summary["delta_terms"] = json::array();
        r.summary["decomposition"] = dec.reason;
    }
    if (c.u && !c.u->multiply) {
        auto deg = opc::classify_modification(c.u->family, run.D);
        r.summary["deg_D_phi"] = deg.degree;
        r.summary["branch"] = deg.branch;
    }
    r.summary["residual_depth_checked"] = c.residual_depth;
    r.summary["residuals_zero"] = run.zero;
    add_annotations(r, c);
    r.columns = {"k", "moment_u1", "residual"};
    for (int k = 0; k <= c.residual_depth; ++k)
        r.rows.push_back({k, rational_json(run.u1.moment(k)), rational_json(run.residuals[k])});
    r.exit_code = run.zero ? 0 : 4;
    return r;
}

// ---- verify ------------------------------------------------------------------------

Report cmd_verify(const RunConfig& c) {
    Report r = start("verify", c);
    if (c.kind == "companion") {
        CompanionRun run = companion_run(c);
        r.summary["target"] = "companion";
        r.summary["residual_depth_checked"] = c.residual_depth;
        r.summary["residuals_zero"] = run.zero;
        r.columns = {"k", "residual"};
        for (int k = 0; k <= c.residual_depth; ++k) r.rows.push_back({k, rational_json(run.residuals[k])});
        r.exit_code = run.zero ? 0 : 4;
        return r;
    }
    static const std::set<std::string> kSolve{"1", "2", "3", "4", "II"};
    if (!kSolve.count(c.kind)) config_error("verify targets a solver case or companion", c.kind);
    const opc::SolveReport rep = solve(c);
    const int N = static_cast<int>(rep.coeffs.size()) - 1;
    auto Q = opc::polys_from_recurrence(rep.coeffs.q, N);
    auto R = opc::reconstruct_R(rep.coeffs.cd, Q, N);
    const auto& cd = rep.coeffs.cd;
    opc::RelationPins pins{{cd.sigma[0], cd.sigma[1]}, {cd.tau[0], cd.tau[1]}, {}, {}};
    auto fit = opc::fit_relation(R, Q, N, pins);
    // The fit at depth N recovers sigma, d on 0..N-1 and tau, e on 0..N-2.
    auto prefix = [](const std::vector<Rational>& got, const std::vector<Rational>& want) {
        return got.size() <= want.size() && std::equal(got.begin(), got.end(), want.begin());
    };
    const bool round_trip = fit.exact() && prefix(fit.cd.sigma, cd.sigma) && prefix(fit.cd.tau, cd.tau) &&
                            prefix(fit.cd.d, cd.d) && prefix(fit.cd.e, cd.e);
    r.summary["target"] = "case " + c.kind;
    r.summary["valid"] = rep.valid;
    r.summary["verdict"] = rep.verdict ? opc::case_tag_name(rep.verdict->tag) : "none";
    r.summary["round_trip"] = round_trip;
    r.columns = {"n", "residual_zero"};
    for (std::size_t n = 0; n < fit.residual.size(); ++n)
        r.rows.push_back({static_cast<long>(n + 1), fit.residual[n].is_zero()});
    r.exit_code = rep.valid && round_trip ? 0 : 4;
    return r;
}

}  // namespace

bool is_command(const std::string& name) {
    static const std::set<std::string> kNames{"moments", "recurrence", "solve", "fit",
                                              "sobolev", "companion",  "verify", "run"};
    return kNames.count(name) > 0;
}

Report run_command(const std::string& name_in, const RunConfig& c) {
    std::string name = name_in;
    if (name == "run") {
        if (c.kind == "1" || c.kind == "2" || c.kind == "3" || c.kind == "4" || c.kind == "II") name = "solve";
        else name = c.kind;
    }
    if (name == "moments") return cmd_moments(c);
    if (name == "recurrence") return cmd_recurrence(c);
    if (name == "solve") {
        static const std::set<std::string> kSolve{"1", "2", "3", "4", "II"};
        if (!kSolve.count(c.kind)) config_error("solve needs case 1|2|3|4|II", c.kind);
        return cmd_solve(c);
    }
    if (name == "fit") return cmd_fit(c);
    if (name == "sobolev") return cmd_sobolev(c);
    if (name == "companion") return cmd_companion(c);
    if (name == "verify") return cmd_verify(c);
    config_error("command is moments|recurrence|solve|fit|sobolev|companion|verify|run", name);
}

}  // namespace cli
