#include "coarse/construction.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>

#include "coarse/errors.hpp"
#include "coarse/hypergeom.hpp"
#include "coarse/rng.hpp"

namespace coarse {

std::string bound_mode_name(BoundMode mode) {
    return mode == BoundMode::Hoeffding ? "hoeffding" : "exact-finite";
}

BoundMode bound_mode_from_name(const std::string& name) {
    if (name == "hoeffding") return BoundMode::Hoeffding;
    if (name == "exact-finite") return BoundMode::ExactFinite;
    throw std::invalid_argument("unknown bound mode: " + name);
}

void ConstructionConfig::validate() const {
    if (p.sign() < 0 || p > ratio(1, 2))
        throw std::invalid_argument("config: p must lie in [0, 1/2]");
    if (epsilons.size() < stages)
        throw std::invalid_argument("config: need one epsilon per stage");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (epsilons[i].sign() <= 0)
            throw std::invalid_argument("config: epsilons must be positive");
        if (i > 0 && epsilons[i] >= epsilons[i - 1])
            throw std::invalid_argument("config: epsilons must be strictly decreasing");
    }
    if (sets.empty()) throw std::invalid_argument("config: at least one set is required");
    if (reductions.empty()) throw std::invalid_argument("config: at least one reduction is required");
    const bool has_identity = std::any_of(reductions.begin(), reductions.end(),
                                          [](const FuncSpec& f) { return f.is_identity(); });
    if (!has_identity)
        throw std::invalid_argument("config: reductions must include the identity (a bare \"x\")");
    if (horizon == 0) throw std::invalid_argument("config: horizon must be at least 1");
    if (max_retries == 0) throw std::invalid_argument("config: max_retries must be at least 1");
}

std::vector<std::string> ConstructionConfig::warnings() const {
    std::vector<std::string> out;
    if (stages == 0) return out;
    const Rational& eps0 = epsilons.front();
    if (p - eps0 <= Rational(0) && p.sign() > 0)
        out.push_back("first epsilon is at least p; early-stage floors are vacuous");
    if (p + eps0 >= ratio(1, 2))
        out.push_back("p + first epsilon reaches 1/2; early-stage caps are weak");
    return out;
}

ConstructionConfig ConstructionConfig::from_json(const nlohmann::json& j) {
    ConstructionConfig cfg;
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    if (!j.contains("p")) throw std::invalid_argument("config: missing \"p\"");
    cfg.p = Rational::parse(j.at("p").get<std::string>());
    for (const auto& item : j.at("epsilons")) cfg.epsilons.push_back(Rational::parse(item.get<std::string>()));
    for (const auto& item : j.at("sets")) cfg.sets.push_back(parse_set(item.get<std::string>()));
    for (const auto& item : j.at("reductions"))
        cfg.reductions.push_back(parse_reduction(item.get<std::string>()));
    cfg.stages = j.value("stages", std::uint64_t{1});
    cfg.horizon = j.value("horizon", std::uint64_t{1});
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.max_retries = j.value("max_retries", std::uint64_t{1000});
    cfg.bound_mode = bound_mode_from_name(j.value("bound_mode", std::string("exact-finite")));
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json ConstructionConfig::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p.str();
    nlohmann::ordered_json eps = nlohmann::ordered_json::array();
    for (const Rational& e : epsilons) eps.push_back(e.str());
    j["epsilons"] = std::move(eps);
    nlohmann::ordered_json sets_j = nlohmann::ordered_json::array();
    for (const SetSpec& s : sets) sets_j.push_back(s.source());
    j["sets"] = std::move(sets_j);
    nlohmann::ordered_json red_j = nlohmann::ordered_json::array();
    for (const FuncSpec& f : reductions) red_j.push_back(f.source());
    j["reductions"] = std::move(red_j);
    j["stages"] = stages;
    j["horizon"] = horizon;
    j["seed"] = seed;
    j["max_retries"] = max_retries;
    j["bound_mode"] = bound_mode_name(bound_mode);
    return j;
}

bool Constraint::satisfied_by(const std::vector<std::uint64_t>& s, const Rational& p) const {
    std::uint64_t hits = 0;
    auto it = s.begin();
    for (std::uint64_t v : in_window) {
        it = std::lower_bound(it, s.end(), v);
        if (it == s.end()) break;
        if (*it == v) ++hits;
    }
    return ratio(hits + outside_count, 1) >= p * ratio(solo_size, 1);
}

namespace {

struct GeomEval {
    bool less_than_one = false;
    std::string upper;
};

// ell * exp(-m eps^3) / (1 - exp(-eps^3)), every step rounded so the result
// is an upper bound on the true value.
GeomEval geometric_bound(std::uint64_t ell, std::uint64_t m, const Rational& eps) {
    const Rational e3 = eps * eps * eps;
    mpfr_t r_up, denom_down, val;
    mpfr_init2(r_up, 128);
    mpfr_init2(denom_down, 128);
    mpfr_init2(val, 128);

    const mpq_class neg_e3 = (-e3).raw();
    mpfr_set_q(r_up, neg_e3.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(r_up, r_up, MPFR_RNDU);
    mpfr_ui_sub(denom_down, 1, r_up, MPFR_RNDD);
    if (mpfr_sgn(denom_down) <= 0) {
        mpfr_clears(r_up, denom_down, val, nullptr);
        throw ResourceLimit("geometric bound: epsilon too small to certify at this precision");
    }
    const mpq_class neg_me3 = (-(e3 * ratio(m, 1))).raw();
    mpfr_set_q(val, neg_me3.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(val, val, MPFR_RNDU);
    mpfr_mul_ui(val, val, static_cast<unsigned long>(ell), MPFR_RNDU);
    mpfr_div(val, val, denom_down, MPFR_RNDU);

    GeomEval out;
    out.less_than_one = mpfr_cmp_ui(val, 1) < 0;
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.20RUe", val);
    out.upper = buf;
    mpfr_clears(r_up, denom_down, val, nullptr);
    return out;
}

std::string upper_decimal(const Rational& q) {
    return UpperReal::from_rational(q).str();
}

// P(|S ∩ in_window| + outside < p * solo) for a uniform r-subset S of an
// n_window-element window.
Rational constraint_failure_exact(const Constraint& c, std::uint64_t n_window, std::uint64_t r,
                                  const Rational& p) {
    const Rational tau = p * ratio(c.solo_size, 1) - ratio(c.outside_count, 1);
    if (tau.sign() <= 0) return Rational(0);
    // X < tau  <=>  X <= ceil(tau) - 1 for integral tau, else X <= floor(tau)
    const Rational top = tau.is_integer() ? tau - Rational(1) : Rational(tau.floor());
    if (top.sign() < 0) return Rational(0);
    const Hypergeom h(r, n_window, c.in_window.size());
    return hypergeom_tail_leq(h, top);
}

}  // namespace

std::uint64_t choose_M(std::uint64_t ell, std::uint64_t base, const Rational& eps,
                       std::uint64_t prev_m, BoundMode mode) {
    if (eps.sign() <= 0) throw std::invalid_argument("choose_M: epsilon must be positive");
    std::uint64_t m = prev_m + 1;
    const BigInt need = (ratio(base, 1) / eps).ceil();
    if (need > 0 && big(m) < need) m = to_u64(need);

    if (mode == BoundMode::ExactFinite || ell == 0) return m;

    while (!geometric_bound(ell, m, eps).less_than_one) {
        ++m;
        if (m > prev_m + 100000000ULL)
            throw ResourceLimit("choose_M: geometric criterion unreachable");
    }
    while (m > prev_m + 1 && big(m - 1) >= need && geometric_bound(ell, m - 1, eps).less_than_one)
        --m;
    return m;
}

std::uint64_t choose_K(std::uint64_t ell, std::uint64_t m, std::uint64_t base,
                       const PartitionTable& table) {
    const std::size_t e_hi = std::min<std::size_t>(ell + 1, table.reductions().size());
    BigInt max_image = -1;
    for (std::size_t e = 0; e < e_hi; ++e) {
        for (std::uint64_t i = 1; i < m; ++i) {
            const StarSplit& split = table.get(e, i);
            if (split.max_image > max_image) max_image = split.max_image;
        }
    }
    if (max_image < big(base)) return 1;
    return to_u64(max_image - big(base) + 1);
}

std::uint64_t choose_N(std::uint64_t base, std::uint64_t k, const Rational& p,
                       const Rational& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("choose_N: epsilon must be positive");
    const Rational bk = ratio(base, 1) + ratio(k, 1);
    const Rational one_minus = Rational(1) - p - Rational(2) * eps;

    std::uint64_t n = 1;
    if (one_minus.sign() > 0) {
        const BigInt first = (bk * one_minus / eps).ceil();
        if (first > 0 && big(n) < first) n = to_u64(first);
    }
    const Rational half_eps = eps / Rational(2);
    for (;; ++n) {
        const Rational rn = ratio(n, 1);
        const Rational r_floor = Rational(((p + eps) * rn).floor());
        if (r_floor / rn - p >= half_eps) return n;
    }
}

std::vector<Constraint> collect_constraints(std::uint64_t ell, std::uint64_t m, PosRange window,
                                            const PartitionTable& table, const Rational& eps,
                                            std::uint64_t horizon) {
    std::vector<Constraint> out;
    const std::size_t e_hi = std::min<std::size_t>(ell + 1, table.reductions().size());
    const Rational two_eps = Rational(2) * eps;
    const BigInt lo = big(window.lo), hi = big(window.hi);
    for (std::uint64_t n = m; n <= horizon; ++n) {
        for (std::size_t e = 0; e < e_hi; ++e) {
            const StarSplit& split = table.get(e, n);
            const std::uint64_t solo = split.j_solo.size();
            if (!(ratio(solo, 1) > two_eps * ratio(n, 1))) continue;
            Constraint c;
            c.n = n;
            c.e = e;
            c.solo_size = solo;
            for (const BigInt& v : split.j_solo)
                if (v >= lo && v < hi) c.in_window.push_back(to_u64(v));
            if (c.in_window.empty()) continue;
            c.outside_count = solo - c.in_window.size();
            out.push_back(std::move(c));
        }
    }
    return out;
}

UnionBoundCert union_bound_exact(const std::vector<Constraint>& constraints,
                                 std::uint64_t n_window, std::uint64_t r, const Rational& p) {
    UnionBoundCert cert;
    if (constraints.empty()) {
        cert.less_than_one = true;
        cert.exact_only = true;
        cert.exact_sum = Rational(0);
        cert.upper = "0";
        return cert;
    }
    const Rational t = ratio(r, 1) / ratio(n_window, 1) - p;

    // Analytic pass: per-constraint Hoeffding bounds always dominate the
    // exact failure probabilities, so a total below 1 is already a valid
    // certificate and the decision matches the all-exact rule.
    std::vector<UpperReal> analytic;
    analytic.reserve(constraints.size());
    const bool analytic_valid = t.sign() > 0;
    if (analytic_valid) {
        UpperReal total = UpperReal::zero();
        for (const Constraint& c : constraints) {
            analytic.push_back(hoeffding_upper(t, c.solo_size));
            total.add(analytic.back());
        }
        if (total.less_than(Rational(1))) {
            cert.less_than_one = true;
            cert.exact_only = false;
            cert.upper = total.str();
            return cert;
        }
    }

    // Exact terms, largest analytic bound first, with early exit both ways.
    std::vector<std::size_t> order(constraints.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (analytic_valid) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return analytic[a].to_double() > analytic[b].to_double();
        });
    }
    std::vector<UpperReal> suffix(order.size() + 1);
    suffix[order.size()] = UpperReal::zero();
    if (analytic_valid)
        for (std::size_t i = order.size(); i-- > 0;)
            suffix[i] = UpperReal(suffix[i + 1]).add(analytic[order[i]]);

    Rational exact;
    for (std::size_t i = 0; i < order.size(); ++i) {
        exact += constraint_failure_exact(constraints[order[i]], n_window, r, p);
        if (exact >= Rational(1)) {
            cert.less_than_one = false;
            cert.exact_only = (i + 1 == order.size());
            cert.exact_sum = exact;
            cert.upper = upper_decimal(exact);
            return cert;
        }
        if (analytic_valid && i + 1 < order.size() &&
            suffix[i + 1].less_than(Rational(1) - exact)) {
            cert.less_than_one = true;
            cert.exact_only = false;
            cert.exact_sum = exact;
            UpperReal total = UpperReal::from_rational(exact);
            total.add(suffix[i + 1]);
            cert.upper = total.str();
            return cert;
        }
    }
    cert.less_than_one = exact < Rational(1);
    cert.exact_only = true;
    cert.exact_sum = exact;
    cert.upper = upper_decimal(exact);
    return cert;
}

UnionBoundCert union_bound_geometric(std::uint64_t ell, std::uint64_t m, const Rational& eps) {
    const GeomEval eval = geometric_bound(ell, m, eps);
    UnionBoundCert cert;
    cert.less_than_one = eval.less_than_one;
    cert.exact_only = false;
    cert.upper = eval.upper;
    return cert;
}

SPick choose_S(PosRange window, std::uint64_t r, const std::vector<Constraint>& constraints,
               const Rational& p, std::uint64_t seed, std::uint64_t max_retries) {
    if (r > window.length()) throw std::invalid_argument("choose_S: r exceeds the window");
    Xoshiro256ss gen(seed);
    for (std::uint64_t attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::uint64_t> s = sample_without_replacement(window.length(), r, gen);
        for (std::uint64_t& v : s) v += window.lo;
        const bool ok = std::all_of(constraints.begin(), constraints.end(),
                                    [&](const Constraint& c) { return c.satisfied_by(s, p); });
        if (ok) return {std::move(s), attempt};
    }
    throw SelectionFailure("choose_S: no admissible zero-set within the retry budget",
                           max_retries);
}

StageResult run_stage(const ConstructionConfig& cfg, const BitSeq& prefix, std::uint64_t ell,
                      std::uint64_t prev_m, const PartitionTable& table) {
    const std::uint64_t base = prefix.size();
    const Rational eps = cfg.epsilons.at(ell);
    const SetSpec& played = cfg.sets[ell % cfg.sets.size()];

    std::uint64_t m = choose_M(ell, base, eps, prev_m, cfg.bound_mode);
    std::uint64_t m_raises = 0;
    std::uint64_t k = 0, n = 0, r = 0;
    PosRange window;
    std::vector<Constraint> constraints;
    UnionBoundCert cert;
    for (;;) {
        k = choose_K(ell, m, base, table);
        n = choose_N(base, k, cfg.p, eps);
        window = {base + k, base + k + n};
        r = to_u64(((cfg.p + eps) * ratio(n, 1)).floor());
        constraints = collect_constraints(ell, m, window, table, eps, cfg.horizon);
        cert = cfg.bound_mode == BoundMode::ExactFinite
                   ? union_bound_exact(constraints, n, r, cfg.p)
                   : union_bound_geometric(ell, m, eps);
        if (cert.less_than_one) break;
        if (cfg.bound_mode == BoundMode::Hoeffding)
            throw std::logic_error("run_stage: geometric certificate lost after choose_M");
        ++m;
        ++m_raises;
        if (m_raises > 1000000)
            throw ResourceLimit("run_stage: union bound stays at or above 1");
    }

    const std::uint64_t stage_seed = mix_seed(cfg.seed, ell);
    SPick pick = choose_S(window, r, constraints, cfg.p, stage_seed, cfg.max_retries);

    StageResult result;
    result.alpha = BitSeq::zeros(k);
    std::size_t si = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t x = window.lo + i;
        if (si < pick.values.size() && pick.values[si] == x) {
            ++si;
            result.beta.push_back(false);
        } else {
            result.beta.push_back(!played.contains(x));
        }
    }

    StageRecord& rec = result.record;
    rec.stage = ell;
    rec.epsilon = eps;
    rec.set_source = played.source();
    rec.base = base;
    rec.m = m;
    rec.k = k;
    rec.n = n;
    rec.window = window;
    rec.r = r;
    rec.s = std::move(pick.values);
    rec.retries = pick.retries;
    rec.stage_seed = stage_seed;
    rec.m_raises = m_raises;
    rec.bound_mode = bound_mode_name(cfg.bound_mode);
    rec.union_bound = cert.upper;
    rec.union_bound_exact = cert.exact_sum ? cert.exact_sum->str() : "";
    rec.constraints.reserve(constraints.size());
    for (const Constraint& c : constraints)
        rec.constraints.push_back(
            {c.n, c.e, c.solo_size, c.in_window.size(), c.outside_count});
    return result;
}

BuildResult build_prefix(const ConstructionConfig& cfg) {
    cfg.validate();
    BuildResult out;
    PartitionTable table(cfg.reductions);
    std::uint64_t prev_m = 0;
    for (std::uint64_t ell = 0; ell < cfg.stages; ++ell) {
        try {
            StageResult stage = run_stage(cfg, out.a, ell, prev_m, table);
            out.a.append(stage.alpha);
            out.a.append(stage.beta);
            prev_m = stage.record.m;
            out.ledger.push_back(std::move(stage.record));
        } catch (const SelectionFailure& failure) {
            throw StageFailure("stage " + std::to_string(ell) + ": " + failure.what(), ell,
                               out.ledger);
        }
    }
    return out;
}

nlohmann::ordered_json StageRecord::to_json() const {
    nlohmann::ordered_json j;
    j["stage"] = stage;
    j["epsilon"] = epsilon.str();
    j["set"] = set_source;
    j["base"] = base;
    j["m"] = m;
    j["k"] = k;
    j["n"] = n;
    j["window"] = nlohmann::ordered_json::array({window.lo, window.hi});
    j["r"] = r;
    j["s"] = s;
    j["retries"] = retries;
    j["stage_seed"] = stage_seed;
    j["m_raises"] = m_raises;
    j["bound_mode"] = bound_mode;
    j["union_bound"] = union_bound;
    j["union_bound_exact"] = union_bound_exact;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const LedgerConstraint& c : constraints) {
        nlohmann::ordered_json cj;
        cj["n"] = c.n;
        cj["e"] = c.e;
        cj["solo"] = c.solo_size;
        cj["in_window"] = c.in_window;
        cj["outside"] = c.outside;
        cs.push_back(std::move(cj));
    }
    j["constraints"] = std::move(cs);
    return j;
}

StageRecord StageRecord::from_json(const nlohmann::json& j) {
    StageRecord rec;
    rec.stage = j.at("stage").get<std::uint64_t>();
    rec.epsilon = Rational::parse(j.at("epsilon").get<std::string>());
    rec.set_source = j.at("set").get<std::string>();
    rec.base = j.at("base").get<std::uint64_t>();
    rec.m = j.at("m").get<std::uint64_t>();
    rec.k = j.at("k").get<std::uint64_t>();
    rec.n = j.at("n").get<std::uint64_t>();
    rec.window.lo = j.at("window").at(0).get<std::uint64_t>();
    rec.window.hi = j.at("window").at(1).get<std::uint64_t>();
    rec.r = j.at("r").get<std::uint64_t>();
    rec.s = j.at("s").get<std::vector<std::uint64_t>>();
    rec.retries = j.at("retries").get<std::uint64_t>();
    rec.stage_seed = j.at("stage_seed").get<std::uint64_t>();
    rec.m_raises = j.at("m_raises").get<std::uint64_t>();
    rec.bound_mode = j.at("bound_mode").get<std::string>();
    rec.union_bound = j.at("union_bound").get<std::string>();
    rec.union_bound_exact = j.at("union_bound_exact").get<std::string>();
    for (const auto& cj : j.at("constraints")) {
        LedgerConstraint c;
        c.n = cj.at("n").get<std::uint64_t>();
        c.e = cj.at("e").get<std::size_t>();
        c.solo_size = cj.at("solo").get<std::uint64_t>();
        c.in_window = cj.at("in_window").get<std::uint64_t>();
        c.outside = cj.at("outside").get<std::uint64_t>();
        rec.constraints.push_back(std::move(c));
    }
    return rec;
}

}  // namespace coarse
