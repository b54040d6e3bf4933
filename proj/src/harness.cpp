#include "coarse/harness.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coarse/bitfile.hpp"
#include "coarse/density.hpp"
#include "coarse/errors.hpp"
#include "coarse/halfbound.hpp"
#include "coarse/hypergeom.hpp"
#include "coarse/rng.hpp"

namespace coarse {

namespace fs = std::filesystem;

namespace {

nlohmann::json load_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("short write to " + path.string());
}

ConstructionConfig load_config(const HarnessOptions& opt) {
    if (opt.config_path.empty()) throw std::invalid_argument("--config is required");
    ConstructionConfig cfg = ConstructionConfig::from_json(load_json(opt.config_path));
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.stages) cfg.stages = *opt.stages;
    if (opt.horizon) cfg.horizon = *opt.horizon;
    if (opt.bound_mode) cfg.bound_mode = *opt.bound_mode;
    cfg.validate();
    return cfg;
}

std::string ledger_to_jsonl(const std::vector<StageRecord>& ledger) {
    std::string out;
    for (const StageRecord& rec : ledger) {
        out += rec.to_json().dump();
        out += '\n';
    }
    return out;
}

std::vector<StageRecord> ledger_from_jsonl(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::vector<StageRecord> ledger;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ledger.push_back(StageRecord::from_json(nlohmann::json::parse(line)));
    }
    return ledger;
}

void print_report(const VerificationReport& rep, int verbosity) {
    if (verbosity == 0) return;
    std::cout << rep.summary();
    if (verbosity >= 2) {
        for (const VerificationItem& item : rep.items) {
            const char* st = item.status == VerificationItem::Status::Pass ? "pass"
                             : item.status == VerificationItem::Status::Fail ? "FAIL"
                                                                             : "defer";
            std::cout << "    [" << st << "] " << item.clause << " stage=" << item.stage;
            if (item.e) std::cout << " e=" << *item.e;
            if (item.n) std::cout << " n=" << *item.n;
            std::cout << " lhs=" << item.lhs << " rhs=" << item.rhs;
            if (!item.note.empty()) std::cout << " (" << item.note << ")";
            std::cout << "\n";
        }
    }
}

}  // namespace

int cmd_construct(const HarnessOptions& opt) {
    const ConstructionConfig cfg = load_config(opt);
    const fs::path out(opt.out_dir);
    fs::create_directories(out);

    BuildResult built;
    try {
        built = build_prefix(cfg);
    } catch (const StageFailure& sf) {
        write_text(out / "ledger.jsonl", ledger_to_jsonl(sf.partial_ledger()));
        nlohmann::ordered_json fail;
        fail["error"] = sf.what();
        fail["stage"] = sf.stage();
        write_text(out / "failure.json", fail.dump(2) + "\n");
        if (opt.verbosity > 0) std::cout << "CONSTRUCT FAIL: " << sf.what() << "\n";
        return 1;
    }

    write_bit_file(out / "a.bits", built.a);
    write_text(out / "ledger.jsonl", ledger_to_jsonl(built.ledger));
    write_text(out / "config_used.json", cfg.to_json().dump(2) + "\n");

    const VerificationReport rep = verify_construction(built.a, built.ledger, cfg);
    write_text(out / "report.json", rep.to_json().dump(2) + "\n");
    if (opt.verbosity > 0) {
        std::cout << "constructed " << built.a.size() << " bits over " << built.ledger.size()
                  << " stage(s)\n";
        for (const StageRecord& rec : built.ledger) {
            std::cout << "  stage " << rec.stage << ": m=" << rec.m << " k=" << rec.k
                      << " n=" << rec.n << " window=[" << rec.window.lo << "," << rec.window.hi
                      << ") r=" << rec.r << " retries=" << rec.retries
                      << " bound<1: " << rec.union_bound << "\n";
        }
    }
    print_report(rep, opt.verbosity);
    return rep.ok() ? 0 : 1;
}

int cmd_verify(const HarnessOptions& opt) {
    const fs::path out(opt.out_dir);
    const fs::path cfg_path = opt.config_path.empty() ? out / "config_used.json"
                                                      : fs::path(opt.config_path);
    ConstructionConfig cfg = ConstructionConfig::from_json(load_json(cfg_path));
    cfg.validate();
    const BitSeq a = read_bit_file(out / "a.bits");
    const std::vector<StageRecord> ledger = ledger_from_jsonl(out / "ledger.jsonl");

    const VerificationReport rep = verify_construction(a, ledger, cfg);
    write_text(out / "report.json", rep.to_json().dump(2) + "\n");
    print_report(rep, opt.verbosity);
    return rep.ok() ? 0 : 1;
}

int cmd_gamma(const HarnessOptions& opt) {
    if (opt.config_path.empty()) throw std::invalid_argument("--config is required");
    const nlohmann::json j = load_json(opt.config_path);
    if (!j.contains("bits") || !j.contains("sets"))
        throw std::invalid_argument("gamma config needs \"bits\" and \"sets\"");
    const fs::path bits_path = fs::path(opt.config_path).parent_path() /
                               j.at("bits").get<std::string>();
    const BitSeq a = read_bit_file(bits_path);
    if (a.empty()) throw std::invalid_argument("gamma: empty bit file");

    std::vector<SetSpec> sets;
    for (const auto& s : j.at("sets")) sets.push_back(parse_set(s.get<std::string>()));

    std::vector<std::uint64_t> checkpoints;
    if (j.contains("checkpoints")) {
        for (const auto& c : j.at("checkpoints")) checkpoints.push_back(c.get<std::uint64_t>());
        for (std::uint64_t c : checkpoints)
            if (c == 0 || c > a.size())
                throw std::invalid_argument("gamma: checkpoint outside the committed prefix");
        if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
            throw std::invalid_argument("gamma: checkpoints must be non-decreasing");
    } else {
        for (std::uint64_t n = 1; triangle(n) <= a.size(); ++n)
            checkpoints.push_back(triangle(n));
        if (checkpoints.empty() || checkpoints.back() != a.size())
            checkpoints.push_back(a.size());
    }

    std::string csv = "set,checkpoint,agreement\n";
    nlohmann::ordered_json report;
    report["kind"] = "finite-prefix-evidence";
    report["prefix_length"] = a.size();
    report["checkpoints"] = checkpoints;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    Rational best_final(-1);
    std::string best_set;
    for (const SetSpec& s : sets) {
        std::vector<Rational> vals;
        std::uint64_t agree = 0, scanned = 0;
        for (std::uint64_t cp : checkpoints) {
            for (; scanned < cp; ++scanned) agree += (a[scanned] == s.contains(scanned));
            vals.push_back(ratio(agree, cp));
            csv += s.source() + "," + std::to_string(cp) + "," + vals.back().str() + "\n";
        }
        std::vector<Rational> sufmin(vals.size());
        for (std::size_t i = vals.size(); i-- > 0;)
            sufmin[i] = i + 1 < vals.size() ? std::min(vals[i], sufmin[i + 1]) : vals[i];
        nlohmann::ordered_json row;
        row["set"] = s.source();
        nlohmann::ordered_json vj = nlohmann::ordered_json::array();
        for (const Rational& v : vals) vj.push_back(v.str());
        row["agreement"] = std::move(vj);
        nlohmann::ordered_json mj = nlohmann::ordered_json::array();
        for (const Rational& v : sufmin) mj.push_back(v.str());
        row["suffix_min"] = std::move(mj);
        rows.push_back(std::move(row));
        if (sufmin.front() > best_final) {
            best_final = sufmin.front();
            best_set = s.source();
        }
    }
    report["evidence"] = std::move(rows);
    report["best_suffix_min"] = best_final.str();
    report["best_set"] = best_set;

    const fs::path out(opt.out_dir);
    fs::create_directories(out);
    write_text(out / "gamma.csv", csv);
    write_text(out / "gamma.json", report.dump(2) + "\n");
    if (opt.verbosity > 0)
        std::cout << "gamma evidence over " << checkpoints.size() << " checkpoint(s), "
                  << sets.size() << " set(s); best suffix-min " << best_final.str() << " by \""
                  << best_set << "\"\n";
    return 0;
}

HypergridResult run_hypergrid(const HypergridConfig& cfg, std::string* csv) {
    HypergridResult res;
    if (csv) *csv = "population,draws,marked,tail_checks,worst_margin\n";
    for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            const BigInt denom = binomial(n, k);
            for (std::uint64_t m = 0; m <= n; ++m) {
                ++res.triples;
                const Hypergeom h{k, n, m};
                const std::uint64_t x_min = k > n - m ? k - (n - m) : 0;
                const std::uint64_t x_max = std::min(k, m);

                // Independent oracle: raw binomial numerators over C(n, k).
                std::vector<BigInt> prefix;  // prefix[i] sums numerators through x_min+i
                BigInt acc = 0;
                Rational kernel_sum(0);
                bool pmf_match = true;
                for (std::uint64_t x = x_min; x <= x_max; ++x) {
                    const BigInt num = binomial(m, x) * binomial(n - m, k - x);
                    acc += num;
                    prefix.push_back(acc);
                    const Rational kp = hypergeom_pmf(h, x);
                    kernel_sum += kp;
                    if (kp != Rational(num, denom)) pmf_match = false;
                }
                ++res.sum_checks;
                if (acc != denom || !pmf_match || kernel_sum != Rational(1)) ++res.sum_failures;

                // Exhaustive enumeration for small populations: draw every
                // k-subset, histogram the marked count.
                if (n <= cfg.enumerate_max) {
                    std::vector<std::uint64_t> histogram(x_max - x_min + 1, 0);
                    std::vector<bool> pick(n, false);
                    for (std::uint64_t i = 0; i < k; ++i) pick[n - 1 - i] = true;
                    do {
                        std::uint64_t hits = 0;
                        for (std::uint64_t i = 0; i < n; ++i) hits += (pick[i] && i < m);
                        ++histogram[hits - x_min];
                    } while (std::next_permutation(pick.begin(), pick.end()));
                    ++res.enum_checks;
                    BigInt prev = 0;
                    bool match = true;
                    for (std::uint64_t i = 0; i < histogram.size(); ++i) {
                        if (big(histogram[i]) != prefix[i] - prev) match = false;
                        prev = prefix[i];
                    }
                    if (!match) ++res.enum_failures;
                }

                // Kernel tail vs oracle prefix sums, then vs the rounded-up
                // analytic bound, across the admissible q-grid.
                double worst = 2.0;
                std::uint64_t triple_checks = 0;
                for (std::uint64_t qn = 0; qn * n <= m * cfg.q_denominator; ++qn) {
                    const Rational q = ratio(qn, cfg.q_denominator);
                    const Rational t = ratio(m, n) - q;
                    const Rational thr = q * ratio(k, 1);
                    const Rational tail = hypergeom_tail_leq(h, thr);
                    const BigInt top = thr.floor();
                    Rational oracle(0);
                    if (top >= big(x_min)) {
                        const std::uint64_t idx =
                            std::min(to_u64(top - big(x_min)),
                                     static_cast<std::uint64_t>(prefix.size() - 1));
                        oracle = Rational(prefix[idx], denom);
                    }
                    const UpperReal bound = hoeffding_upper(t, k);
                    ++res.tail_checks;
                    ++triple_checks;
                    if (tail != oracle || bound.less_than(tail)) ++res.tail_violations;
                    const double margin = bound.to_double() - tail.to_double();
                    if (margin < worst) worst = margin;
                }
                if (csv) {
                    std::ostringstream line;
                    line << n << "," << k << "," << m << "," << triple_checks << "," << worst
                         << "\n";
                    *csv += line.str();
                }
            }
        }
    }
    return res;
}

int cmd_hypergrid(const HarnessOptions& opt) {
    HypergridConfig cfg;
    if (!opt.config_path.empty()) {
        const nlohmann::json j = load_json(opt.config_path);
        if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<std::uint64_t>();
        if (j.contains("enumerate_max")) cfg.enumerate_max = j.at("enumerate_max").get<std::uint64_t>();
        if (j.contains("q_denominator")) cfg.q_denominator = j.at("q_denominator").get<std::uint64_t>();
    }
    if (cfg.n_max == 0 || cfg.n_max > 200) throw std::invalid_argument("hypergrid: n_max out of range");
    if (cfg.q_denominator == 0) throw std::invalid_argument("hypergrid: q_denominator must be positive");

    std::string csv;
    const HypergridResult res = run_hypergrid(cfg, &csv);

    nlohmann::ordered_json j;
    j["n_max"] = cfg.n_max;
    j["enumerate_max"] = cfg.enumerate_max;
    j["q_denominator"] = cfg.q_denominator;
    j["triples"] = res.triples;
    j["sum_checks"] = res.sum_checks;
    j["sum_failures"] = res.sum_failures;
    j["tail_checks"] = res.tail_checks;
    j["tail_violations"] = res.tail_violations;
    j["enum_checks"] = res.enum_checks;
    j["enum_failures"] = res.enum_failures;
    j["ok"] = res.ok();

    const fs::path out(opt.out_dir);
    fs::create_directories(out);
    write_text(out / "hypergrid.csv", csv);
    write_text(out / "hypergrid.json", j.dump(2) + "\n");
    if (opt.verbosity > 0)
        std::cout << (res.ok() ? "HYPERGRID PASS" : "HYPERGRID FAIL") << ": " << res.tail_checks
                  << " tail checks, " << res.tail_violations << " violations, " << res.sum_checks
                  << " sum checks, " << res.enum_checks << " enumerations\n";
    return res.ok() ? 0 : 1;
}

HalfboundResult run_halfbound(const HalfboundConfig& cfg) {
    if (cfg.n_max == 0 || cfg.trials == 0)
        throw std::invalid_argument("halfbound: n_max and trials must be positive");
    HalfboundResult res;
    res.trials = cfg.trials;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        Xoshiro256ss rng(mix_seed(cfg.seed, trial));
        std::vector<bool> source(cfg.n_max);
        for (std::uint64_t i = 0; i < cfg.n_max; ++i) source[i] = rng.next() & 1;

        const BitSeq clean = halfbound_encode(source);

        // In-budget fuzz on every block at once.
        BitSeq fuzzed = clean;
        for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
            const PosRange r = interval_bounds(IntervalKind::Factorial, n);
            const std::uint64_t budget = halfbound_flip_budget(n);
            const std::uint64_t flips = budget == 0 ? 0 : uniform_below(rng, budget + 1);
            for (std::uint64_t off : sample_without_replacement(r.length(), flips, rng))
                fuzzed.set(r.lo + off, !fuzzed[r.lo + off]);
        }
        if (halfbound_decode_range(fuzzed, 1, cfg.n_max) == source) ++res.recovered;

        // Over-budget attack on one block.
        const std::uint64_t target = 1 + uniform_below(rng, cfg.n_max);
        const PosRange tr = interval_bounds(IntervalKind::Factorial, target);
        const std::uint64_t len = tr.length();
        const bool truth = source[target - 1];
        const std::uint64_t kill = truth ? (len + 1) / 2 : len / 2 + 1;
        BitSeq attacked = clean;
        std::uint64_t flipped = 0;
        for (std::uint64_t x = tr.lo; x < tr.hi && flipped < kill; ++x) {
            attacked.set(x, !attacked[x]);
            ++flipped;
        }
        const std::vector<bool> decoded = halfbound_decode_range(attacked, 1, cfg.n_max);
        std::uint64_t wrong = 0;
        std::uint64_t wrong_at = 0;
        for (std::uint64_t n = 1; n <= cfg.n_max; ++n)
            if (decoded[n - 1] != source[n - 1]) {
                ++wrong;
                wrong_at = n;
            }
        if (wrong == 1 && wrong_at == target) ++res.targeted_flagged;

        const Rational agree = halfbound_agreement(attacked, source, factorial(target + 1));
        const Rational cap = ratio(1, 2) + Rational(1, 2 * (static_cast<long>(target) + 1));
        if (agree <= cap) ++res.quantitative_ok;
    }
    return res;
}

int cmd_halfbound(const HarnessOptions& opt) {
    HalfboundConfig cfg;
    if (!opt.config_path.empty()) {
        const nlohmann::json j = load_json(opt.config_path);
        if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<std::uint64_t>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (cfg.n_max > 11) throw std::invalid_argument("halfbound: n_max too large (blocks grow factorially)");

    const HalfboundResult res = run_halfbound(cfg);

    nlohmann::ordered_json j;
    j["n_max"] = cfg.n_max;
    j["trials"] = res.trials;
    j["seed"] = cfg.seed;
    j["recovered"] = res.recovered;
    j["targeted_flagged"] = res.targeted_flagged;
    j["quantitative_ok"] = res.quantitative_ok;
    j["ok"] = res.ok();

    const fs::path out(opt.out_dir);
    fs::create_directories(out);
    write_text(out / "halfbound.json", j.dump(2) + "\n");
    if (opt.verbosity > 0)
        std::cout << (res.ok() ? "HALFBOUND PASS" : "HALFBOUND FAIL") << ": " << res.recovered
                  << "/" << res.trials << " recovered, " << res.targeted_flagged << "/"
                  << res.trials << " attacks flagged, " << res.quantitative_ok << "/" << res.trials
                  << " quantitative\n";
    return res.ok() ? 0 : 1;
}

}  // namespace coarse
