#include <exception>
#include <iostream>
#include <new>

#include "CLI11.hpp"
#include "coarse/errors.hpp"
#include "coarse/harness.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

void add_common(CLI::App* cmd, coarse::HarnessOptions& opt, std::string& bound_mode) {
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "override the master seed");
    cmd->add_option("--stages", opt.stages, "override the stage count");
    cmd->add_option("--horizon", opt.horizon, "override the interval horizon");
    cmd->add_option("--bound-mode", bound_mode, "hoeffding or exact-finite")
        ->check(CLI::IsMember({"hoeffding", "exact-finite"}));
    cmd->add_flag_callback("--quiet", [&opt] { opt.verbosity = 0; }, "suppress normal output");
    cmd->add_flag_callback("--verbose", [&opt] { opt.verbosity = 2; }, "per-item detail");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite agreement-density construction harness"};
    app.require_subcommand(1);

    coarse::HarnessOptions opt;
    std::string bound_mode;

    CLI::App* construct = app.add_subcommand("construct", "build a prefix and verify it");
    CLI::App* verify = app.add_subcommand("verify", "re-verify previously built artifacts");
    CLI::App* gamma = app.add_subcommand("gamma", "finite agreement-density evidence");
    CLI::App* hypergrid =
        app.add_subcommand("hypergrid", "exhaustive small-scale tail-bound audit");
    CLI::App* halfbound =
        app.add_subcommand("halfbound", "factorial-block repetition code audit");
    for (CLI::App* cmd : {construct, verify, gamma, hypergrid, halfbound})
        add_common(cmd, opt, bound_mode);

    CLI11_PARSE(app, argc, argv);
    if (!bound_mode.empty()) opt.bound_mode = coarse::bound_mode_from_name(bound_mode);

    try {
        if (construct->parsed()) return coarse::cmd_construct(opt);
        if (verify->parsed()) return coarse::cmd_verify(opt);
        if (gamma->parsed()) return coarse::cmd_gamma(opt);
        if (hypergrid->parsed()) return coarse::cmd_hypergrid(opt);
        if (halfbound->parsed()) return coarse::cmd_halfbound(opt);
    } catch (const coarse::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource limit: out of memory\n";
        return kExitResource;
    } catch (const coarse::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitConfig;
}
