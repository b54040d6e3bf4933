#include <algorithm>
#include <ostream>
#include <sstream>

#include "coarse/construction.hpp"
#include "coarse/density.hpp"
#include "coarse/errors.hpp"

namespace coarse {

namespace {

const char* status_name(VerificationItem::Status s) {
    switch (s) {
        case VerificationItem::Status::Pass: return "pass";
        case VerificationItem::Status::Fail: return "fail";
        case VerificationItem::Status::Deferred: return "deferred";
    }
    return "?";
}

// |(B_e <-> B*_e) ∩ I_n|; every image must already be committed.
std::uint64_t interval_agreement(const FuncSpec& f, const StarSplit& split, const BitSeq& a,
                                 std::uint64_t n) {
    const PosRange range = interval_bounds(IntervalKind::Triangular, n);
    std::uint64_t agree = 0;
    for (std::uint64_t x = range.lo; x < range.hi; ++x) {
        const bool b = a[to_u64(f(x))];
        const bool bstar = std::binary_search(split.twin1.begin(), split.twin1.end(), x);
        agree += (b == bstar);
    }
    return agree;
}

std::uint64_t count_agreement_with_set(const BitSeq& a, const SetSpec& c, std::uint64_t end) {
    std::uint64_t agree = 0;
    for (std::uint64_t x = 0; x < end; ++x) agree += (a[x] == c.contains(x));
    return agree;
}

}  // namespace

void VerificationReport::add(VerificationItem item) {
    switch (item.status) {
        case VerificationItem::Status::Pass: ++passed; break;
        case VerificationItem::Status::Fail: ++failed; break;
        case VerificationItem::Status::Deferred: ++deferred; break;
    }
    items.push_back(std::move(item));
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = ok();
    j["passed"] = passed;
    j["failed"] = failed;
    j["deferred"] = deferred;
    j["notes"] = notes;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const VerificationItem& item : items) {
        nlohmann::ordered_json r;
        r["clause"] = item.clause;
        r["stage"] = item.stage;
        if (item.e) r["e"] = *item.e;
        if (item.n) r["n"] = *item.n;
        r["lhs"] = item.lhs;
        r["rhs"] = item.rhs;
        r["status"] = status_name(item.status);
        if (!item.note.empty()) r["note"] = item.note;
        rows.push_back(std::move(r));
    }
    j["items"] = std::move(rows);
    return j;
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << (ok() ? "VERIFY PASS" : "VERIFY FAIL") << ": " << passed << " passed, " << failed
       << " failed, " << deferred << " deferred\n";
    for (const std::string& note : notes) os << "  note: " << note << "\n";
    std::map<std::string, std::array<std::uint64_t, 3>> tallies;
    for (const VerificationItem& item : items) {
        auto& t = tallies[item.clause];
        if (item.status == VerificationItem::Status::Pass) ++t[0];
        else if (item.status == VerificationItem::Status::Fail) ++t[1];
        else ++t[2];
    }
    for (const auto& [clause, t] : tallies) {
        os << "  " << clause << ": " << t[0] << " pass";
        if (t[1]) os << ", " << t[1] << " FAIL";
        if (t[2]) os << ", " << t[2] << " deferred";
        os << "\n";
    }
    for (const VerificationItem& item : items) {
        if (item.status != VerificationItem::Status::Fail) continue;
        os << "  FAIL " << item.clause << " stage=" << item.stage;
        if (item.e) os << " e=" << *item.e;
        if (item.n) os << " n=" << *item.n;
        os << " lhs=" << item.lhs << " rhs=" << item.rhs;
        if (!item.note.empty()) os << " (" << item.note << ")";
        os << "\n";
    }
    return os.str();
}

VerificationReport verify_construction(const BitSeq& a, const std::vector<StageRecord>& ledger,
                                       const ConstructionConfig& cfg) {
    VerificationReport rep;
    for (const std::string& w : cfg.warnings()) rep.notes.push_back(w);
    PartitionTable table(cfg.reductions);

    using Status = VerificationItem::Status;
    auto item = [&](std::string clause, std::uint64_t stage, std::optional<std::size_t> e,
                    std::optional<std::uint64_t> n, std::string lhs, std::string rhs, Status st,
                    std::string note = "") {
        rep.add({std::move(clause), stage, e, n, std::move(lhs), std::move(rhs), st,
                 std::move(note)});
    };
    auto check = [&](std::string clause, std::uint64_t stage, std::optional<std::size_t> e,
                     std::optional<std::uint64_t> n, std::string lhs, std::string rhs, bool pass,
                     std::string note = "") {
        item(std::move(clause), stage, e, n, std::move(lhs), std::move(rhs),
             pass ? Status::Pass : Status::Fail, std::move(note));
    };

    // Ledger chain: stage numbering, geometry, budget arithmetic, seeds.
    check("ledger-chain", 0, std::nullopt, std::nullopt, std::to_string(ledger.size()),
          std::to_string(cfg.stages), ledger.size() == cfg.stages, "stage count");
    std::uint64_t expect_base = 0;
    for (std::size_t idx = 0; idx < ledger.size(); ++idx) {
        const StageRecord& rec = ledger[idx];
        std::string problem;
        if (rec.stage != idx) problem = "stage index mismatch";
        else if (idx < cfg.stages && rec.epsilon != cfg.epsilons[idx]) problem = "epsilon differs from config";
        else if (rec.set_source != cfg.sets[idx % cfg.sets.size()].source()) problem = "set differs from config cycle";
        else if (rec.base != expect_base) problem = "base does not continue the previous stage";
        else if (rec.window.lo != rec.base + rec.k || rec.window.hi != rec.window.lo + rec.n)
            problem = "window geometry broken";
        else if (rec.r != to_u64((((cfg.p + rec.epsilon) * ratio(rec.n, 1))).floor()))
            problem = "r is not floor((p+eps)N)";
        else if (rec.s.size() != rec.r) problem = "|S| != r";
        else if (!std::is_sorted(rec.s.begin(), rec.s.end()) ||
                 std::adjacent_find(rec.s.begin(), rec.s.end()) != rec.s.end())
            problem = "S not a sorted set";
        else if (!rec.s.empty() && (rec.s.front() < rec.window.lo || rec.s.back() >= rec.window.hi))
            problem = "S leaves the window";
        check("ledger-chain", rec.stage, std::nullopt, std::nullopt,
              problem.empty() ? "consistent" : problem, "consistent", problem.empty(), problem);
        expect_base = rec.window.hi;
    }
    check("prefix-length", ledger.size(), std::nullopt, std::nullopt, std::to_string(a.size()),
          std::to_string(expect_base), a.size() == expect_base);
    if (rep.failed > 0) {
        rep.notes.push_back("structural failure: remaining clauses not evaluated");
        return rep;
    }

    for (const StageRecord& rec : ledger) {
        const Rational eps = rec.epsilon;
        const SetSpec& played = cfg.sets[rec.stage % cfg.sets.size()];

        // Byte-level reassembly: alpha zeros, beta pinned by S and the played set.
        std::uint64_t mismatches = 0;
        for (std::uint64_t x = rec.base; x < rec.window.lo; ++x) mismatches += a[x];
        std::size_t si = 0;
        for (std::uint64_t x = rec.window.lo; x < rec.window.hi; ++x) {
            bool expected;
            if (si < rec.s.size() && rec.s[si] == x) {
                ++si;
                expected = false;
            } else {
                expected = !played.contains(x);
            }
            mismatches += (a[x] != expected);
        }
        check("assembly", rec.stage, std::nullopt, std::nullopt, std::to_string(mismatches), "0",
              mismatches == 0);

        // Agreement with the played set stays capped on the whole prefix so far.
        const std::uint64_t end = rec.window.hi;
        const std::uint64_t agree_c = count_agreement_with_set(a, played, end);
        const Rational cap = cfg.p + Rational(2) * eps;
        check("stage-agreement-cap", rec.stage, std::nullopt, std::nullopt,
              ratio(agree_c, end).str(), cap.str(), ratio(agree_c, end) <= cap);

        // The zero budget.
        check("zero-budget", rec.stage, std::nullopt, std::nullopt, ratio(rec.r, rec.n).str(),
              (cfg.p + eps).str(), ratio(rec.r, rec.n) <= cfg.p + eps);

        // Constraints: recomputed from scratch, then checked against the
        // recorded zero-set.
        const std::vector<Constraint> cons =
            collect_constraints(rec.stage, rec.m, rec.window, table, eps, cfg.horizon);
        bool set_matches = cons.size() == rec.constraints.size();
        for (std::size_t i = 0; set_matches && i < cons.size(); ++i) {
            const Constraint& c = cons[i];
            const LedgerConstraint& lc = rec.constraints[i];
            set_matches = c.n == lc.n && c.e == lc.e && c.solo_size == lc.solo_size &&
                          c.in_window.size() == lc.in_window && c.outside_count == lc.outside;
        }
        check("constraint-set", rec.stage, std::nullopt, std::nullopt,
              std::to_string(cons.size()) + " recomputed",
              std::to_string(rec.constraints.size()) + " recorded", set_matches);

        for (const Constraint& c : cons) {
            std::uint64_t hits = 0;
            for (std::uint64_t v : c.in_window)
                hits += std::binary_search(rec.s.begin(), rec.s.end(), v);
            const Rational lhs = ratio(hits + c.outside_count, 1);
            const Rational rhs = cfg.p * ratio(c.solo_size, 1);
            check("constraint-zero-floor", rec.stage, c.e, c.n,
                  lhs.str() + "/" + std::to_string(c.solo_size),
                  rhs.str() + "/" + std::to_string(c.solo_size), lhs >= rhs);

            const StarSplit& split = table.get(c.e, c.n);
            const FuncSpec& f = cfg.reductions[c.e];
            const BigInt len = big(a.size());

            // Solo slack: committed-zero hits on the solo positions plus the
            // stage base absorb the target fraction.
            if (!split.j_solo.empty() && split.j_solo.back() < len) {
                std::uint64_t zeros = 0;
                for (const BigInt& v : split.j_solo) zeros += !a[to_u64(v)];
                const Rational solo_lhs = ratio(zeros + rec.base, 1);
                const Rational solo_rhs = cfg.p * ratio(c.solo_size, 1);
                check("constraint-solo-slack", rec.stage, c.e, c.n,
                      std::to_string(zeros) + "+" + std::to_string(rec.base),
                      solo_rhs.str(), solo_lhs >= solo_rhs);
            } else {
                item("constraint-solo-slack", rec.stage, c.e, c.n, "solo image beyond prefix",
                     "", Status::Deferred, "image beyond committed prefix");
            }

            // The per-pair identity on the twin positions.
            if (split.max_image < len) {
                std::uint64_t twin_agree = 0;
                for (std::uint64_t x : split.twin1) twin_agree += a[to_u64(f(x))];
                for (std::uint64_t x : split.twin2) twin_agree += !a[to_u64(f(x))];
                check("constraint-twin-identity", rec.stage, c.e, c.n,
                      std::to_string(twin_agree), std::to_string(split.twin1.size()),
                      twin_agree == split.twin1.size());
            } else {
                item("constraint-twin-identity", rec.stage, c.e, c.n, "image beyond prefix", "",
                     Status::Deferred, "image beyond committed prefix");
            }
        }
    }

    // Medium-interval floors: stage l vouches for intervals in [m_l, m_{l+1})
    // under every active reduction; the last stage's range is capped by the
    // configured horizon.
    for (std::size_t idx = 0; idx < ledger.size(); ++idx) {
        const StageRecord& rec = ledger[idx];
        const Rational floor_bound = cfg.p - rec.epsilon;
        const std::uint64_t m_lo = rec.m;
        const std::uint64_t m_hi = std::min(
            idx + 1 < ledger.size() ? ledger[idx + 1].m : cfg.horizon + 1, cfg.horizon + 1);
        const std::size_t e_hi = std::min<std::size_t>(rec.stage + 1, cfg.reductions.size());
        if (floor_bound.sign() <= 0)
            rep.notes.push_back("stage " + std::to_string(rec.stage) +
                                ": medium floor p - eps is not positive; clause is vacuous");
        for (std::size_t e = 0; e < e_hi; ++e) {
            std::uint64_t twin_checked = 0, twin_exact = 0;
            for (std::uint64_t n = m_lo; n < m_hi; ++n) {
                const StarSplit& split = table.get(e, n);
                if (!(split.max_image < big(a.size()))) {
                    item("medium-floor", rec.stage, e, n, "image beyond prefix", "",
                         Status::Deferred, "image beyond committed prefix");
                    continue;
                }
                const std::uint64_t agree = interval_agreement(cfg.reductions[e], split, a, n);
                check("medium-floor", rec.stage, e, n, ratio(agree, n).str(), floor_bound.str(),
                      ratio(agree, n) >= floor_bound);
                ++twin_checked;
                std::uint64_t twin_agree = 0;
                for (std::uint64_t x : split.twin1) twin_agree += a[to_u64(cfg.reductions[e](x))];
                for (std::uint64_t x : split.twin2) twin_agree += !a[to_u64(cfg.reductions[e](x))];
                twin_exact += (twin_agree == split.twin1.size());
            }
            if (twin_checked > 0)
                check("twin-pairing", rec.stage, e, std::nullopt, std::to_string(twin_exact),
                      std::to_string(twin_checked), twin_exact == twin_checked);
        }
    }

    // Density chain: stitch the per-interval floors into the prefix-density
    // bound at the end of the committed data, one row per active reduction.
    if (!ledger.empty()) {
        auto gamma_at = [&](std::uint64_t n) {
            std::size_t stage = 0;
            for (std::size_t idx = 0; idx < ledger.size(); ++idx)
                if (ledger[idx].m <= n) stage = idx;
            return ledger[stage].epsilon;
        };
        const std::size_t active = std::min<std::size_t>(ledger.size(), cfg.reductions.size());
        for (std::size_t e = 0; e < active; ++e) {
            const std::uint64_t start = ledger[e].m;
            std::uint64_t cap = 0;
            for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
                const StarSplit& split = table.get(e, n);
                if (interval_bounds(IntervalKind::Triangular, n).hi > a.size()) break;
                if (!(split.max_image < big(a.size()))) break;
                cap = n;
            }
            if (cap < start + 2 || cap < 2) {
                item("density-chain", ledger.size() - 1, e, std::nullopt,
                     "window too short", "", VerificationItem::Status::Deferred,
                     "committed data does not reach past the first medium cutoff");
                continue;
            }
            std::vector<Rational> agreement;
            std::vector<Rational> gammas;
            agreement.reserve(cap);
            for (std::uint64_t n = 1; n <= cap; ++n) {
                agreement.push_back(
                    ratio(interval_agreement(cfg.reductions[e], table.get(e, n), a, n), n));
                gammas.push_back(gamma_at(n));
            }
            const std::uint64_t x = triangle(cap) - 1;
            try {
                const DensityChainResult res = density_chain_check(agreement, gammas, cfg.p, x, start);
                check("density-chain", ledger.size() - 1, e, std::nullopt,
                      res.lower_estimate.str(), res.bound.str(), res.holds,
                      "x=" + std::to_string(x) + " N=" + std::to_string(res.big_n) +
                          " m*=" + std::to_string(res.m_star) +
                          " K=" + std::to_string(res.k_mstar));
            } catch (const HypothesisViolation& hv) {
                check("density-chain", ledger.size() - 1, e, hv.index(), "hypothesis violated",
                      "", false, hv.what());
            }
        }
    }

    return rep;
}

}  // namespace coarse
