#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/bits.hpp"
#include "coarse/intervals.hpp"
#include "coarse/rational.hpp"
#include "coarse/reductions.hpp"
#include "coarse/speclang.hpp"

namespace coarse {

// How stage parameters are certified before the zero-set is sampled.
//   Hoeffding:   the classic geometric-series criterion on the cutoff M,
//                evaluated with round-up arithmetic.
//   ExactFinite: M is raised until the exact hypergeometric failure union
//                bound over the collected constraints is < 1.
enum class BoundMode { Hoeffding, ExactFinite };

std::string bound_mode_name(BoundMode mode);
BoundMode bound_mode_from_name(const std::string& name);

struct ConstructionConfig {
    Rational p;
    std::vector<Rational> epsilons;   // per stage; strictly decreasing, positive
    std::vector<SetSpec> sets;        // cycled: stage l plays against sets[l % size]
    std::vector<FuncSpec> reductions; // stage l constrains indices e <= l
    std::uint64_t stages = 1;
    std::uint64_t horizon = 1;        // largest constrained interval index
    std::uint64_t seed = 0;
    std::uint64_t max_retries = 1000;
    BoundMode bound_mode = BoundMode::ExactFinite;

    // Throws std::invalid_argument (or ParseError from nested specs).
    void validate() const;
    // Non-fatal observations (e.g. a first epsilon too large relative to p).
    std::vector<std::string> warnings() const;

    static ConstructionConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

// One sampled requirement: at interval n under reduction e, the zero-set must
// hit enough of the solo-image values.
struct Constraint {
    std::uint64_t n = 0;
    std::size_t e = 0;
    std::uint64_t solo_size = 0;              // |solo image set|
    std::vector<std::uint64_t> in_window;     // solo values inside the window, sorted
    std::uint64_t outside_count = 0;          // solo values outside the window

    bool satisfied_by(const std::vector<std::uint64_t>& s, const Rational& p) const;
};

// Certificate that a random zero-set fails some constraint with total
// probability < 1. `exact_sum` is filled for terms summed exactly; `upper`
// is a certified printable upper bound on the whole failure probability.
struct UnionBoundCert {
    bool less_than_one = false;
    bool exact_only = false;
    std::optional<Rational> exact_sum;
    std::string upper;
};

// Sizes and choices recorded per stage; enough to replay and to verify.
struct LedgerConstraint {
    std::uint64_t n = 0;
    std::size_t e = 0;
    std::uint64_t solo_size = 0;
    std::uint64_t in_window = 0;
    std::uint64_t outside = 0;
};

struct StageRecord {
    std::uint64_t stage = 0;
    Rational epsilon;
    std::string set_source;
    std::uint64_t base = 0;  // committed length before this stage
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    PosRange window;
    std::uint64_t r = 0;
    std::vector<std::uint64_t> s;  // sorted absolute positions
    std::uint64_t retries = 0;
    std::uint64_t stage_seed = 0;
    std::uint64_t m_raises = 0;
    std::string bound_mode;
    std::string union_bound;       // certified upper bound on failure probability
    std::string union_bound_exact; // exact sum when it was computed, else ""
    std::vector<LedgerConstraint> constraints;

    nlohmann::ordered_json to_json() const;
    static StageRecord from_json(const nlohmann::json& j);
};

// Fails a whole build; carries whatever stages completed.
class StageFailure : public std::runtime_error {
public:
    StageFailure(const std::string& what, std::uint64_t stage,
                 std::vector<StageRecord> partial_ledger)
        : std::runtime_error(what), stage_(stage), partial_(std::move(partial_ledger)) {}
    std::uint64_t stage() const { return stage_; }
    const std::vector<StageRecord>& partial_ledger() const { return partial_; }

private:
    std::uint64_t stage_;
    std::vector<StageRecord> partial_;
};

// Smallest admissible cutoff between small and medium intervals. Both modes
// require m > prev_m and m >= ceil(base / eps) (and m >= 1); Hoeffding mode
// additionally scans for ell * r^m / (1 - r) < 1 with r an upper bound on
// exp(-eps^3), everything rounded toward +infinity.
std::uint64_t choose_M(std::uint64_t ell, std::uint64_t base, const Rational& eps,
                       std::uint64_t prev_m, BoundMode mode);

// Smallest k >= 1 with every image of intervals 1..m-1 under reductions
// e <= ell lying below base + k.
std::uint64_t choose_K(std::uint64_t ell, std::uint64_t m, std::uint64_t base,
                       const PartitionTable& table);

// Smallest n >= 1 with
//   (base + k + p n + eps n) / (base + k + n) <= p + 2 eps   and
//   floor((p + eps) n) / n - p >= eps / 2.
// The second condition is not monotone in n, so candidates are scanned.
std::uint64_t choose_N(std::uint64_t base, std::uint64_t k, const Rational& p,
                       const Rational& eps);

// All constraints for stage ell: e <= ell (clamped to the family), n in
// [m, horizon], solo image set bigger than 2*eps*n, and meeting the window.
std::vector<Constraint> collect_constraints(std::uint64_t ell, std::uint64_t m, PosRange window,
                                            const PartitionTable& table, const Rational& eps,
                                            std::uint64_t horizon);

// Exact-mode certificate. Decides exactly as if every constraint's failure
// tail were summed exactly; analytic per-constraint upper bounds are used
// only to accept early (they always dominate the exact terms), never to
// reject.
UnionBoundCert union_bound_exact(const std::vector<Constraint>& constraints, std::uint64_t n_window,
                                 std::uint64_t r, const Rational& p);

// Hoeffding-mode certificate: ell * r^m / (1 - r), round-up.
UnionBoundCert union_bound_geometric(std::uint64_t ell, std::uint64_t m, const Rational& eps);

struct SPick {
    std::vector<std::uint64_t> values;  // sorted absolute positions
    std::uint64_t retries = 0;
};

// Rejection-samples an r-subset of the window until every constraint holds;
// throws SelectionFailure after max_retries rejections.
SPick choose_S(PosRange window, std::uint64_t r, const std::vector<Constraint>& constraints,
               const Rational& p, std::uint64_t seed, std::uint64_t max_retries);

struct StageResult {
    BitSeq alpha;
    BitSeq beta;
    StageRecord record;
};

StageResult run_stage(const ConstructionConfig& cfg, const BitSeq& prefix, std::uint64_t ell,
                      std::uint64_t prev_m, const PartitionTable& table);

struct BuildResult {
    BitSeq a;
    std::vector<StageRecord> ledger;
};

// Runs all configured stages; stage seeds are mix_seed(cfg.seed, stage).
// Throws StageFailure carrying the completed stages' records.
BuildResult build_prefix(const ConstructionConfig& cfg);

// --- verification over a finished prefix ---

struct VerificationItem {
    enum class Status { Pass, Fail, Deferred };

    std::string clause;
    std::uint64_t stage = 0;
    std::optional<std::size_t> e;
    std::optional<std::uint64_t> n;
    std::string lhs;
    std::string rhs;
    Status status = Status::Pass;
    std::string note;
};

struct VerificationReport {
    std::vector<VerificationItem> items;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t deferred = 0;
    std::vector<std::string> notes;

    bool ok() const { return failed == 0; }
    void add(VerificationItem item);
    nlohmann::ordered_json to_json() const;
    std::string summary() const;
};

// Recomputes every checkable clause from the prefix, the stage records, and
// the config: per-stage agreement caps against the played set, the zero
// budget, constraint satisfaction, byte-level reassembly of the prefix, the
// per-pair agreement identity, and the per-interval agreement floors for
// each stage's medium intervals (deferred when images outrun the prefix).
VerificationReport verify_construction(const BitSeq& a, const std::vector<StageRecord>& ledger,
                                       const ConstructionConfig& cfg);

}  // namespace coarse
