#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "aiet/report.hpp"

namespace {

using aiet::CmdResult;
using aiet::Json;

int emit(CmdResult result, const std::string& path,
         std::chrono::steady_clock::time_point start) {
    result.report["inputs"]["file"] = path;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    result.report["timing_ms"] = ms;
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
}

int emit_error(const std::string& command, const std::string& kind, const std::string& what,
               int exit_code) {
    Json j;
    j["command"] = command;
    j["error"] = Json{{"kind", kind}, {"what", what}};
    j["schema_version"] = aiet::kSchemaVersion;
    std::cout << j.dump(2) << "\n";
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aiet-lab: exact computations with affine interval exchange transformations"};
    app.require_subcommand(1);

    aiet::ReportConfig cfg;
    long horizon = 0, max_period = 64, guard = static_cast<long>(aiet::kDefaultPieceGuard);
    app.add_option("--horizon", horizon, "orbit-tracking horizon (0: automatic)");
    app.add_option("--max-period", max_period, "maximal period probed for Per(f)");
    app.add_option("--guard-pieces", guard, "piece-count guard for compositions");
    app.add_option("--rho-tol", cfg.rho_tol, "rotation-number tolerance");
    app.add_option("--bosh-tol", cfg.bosh_tol, "Boshernitzan grid tolerance");
    app.add_option("--drift-n", cfg.drift_n, "iterations for empirical drift estimates");

    std::string file_path, map_name, group_name, sub_name;
    std::string name_a, name_b;
    long arg_m = 1, arg_n = 1, s_max = 16, arg_p = 1, arg_q = 1, radius = 4;
    std::string word_spec;
    std::vector<std::string> targets;

    CLI::App* analyze = app.add_subcommand("analyze", "break points, slopes, shape, dynamics");
    analyze->add_option("file", file_path)->required();
    analyze->add_option("map", map_name)->required();

    CLI::App* normalize = app.add_subcommand("normalize", "normal-form pipeline");
    normalize->add_option("file", file_path)->required();
    normalize->add_option("map", map_name)->required();

    CLI::App* certify = app.add_subcommand("certify", "distortion certificates");
    certify->add_option("file", file_path)->required();
    certify->add_option("map", map_name)->required();
    certify->add_option("group", group_name, "generating set (default: the map itself)");

    CLI::App* group = app.add_subcommand("group", "group-theoretic checks");
    group->require_subcommand(1);

    CLI::App* bs_check = group->add_subcommand("bs-check", "test b a^m b^-1 = a^n");
    bs_check->add_option("file", file_path)->required();
    bs_check->add_option("a", name_a)->required();
    bs_check->add_option("b", name_b)->required();
    bs_check->add_option("m", arg_m)->required();
    bs_check->add_option("n", arg_n)->required();

    CLI::App* bs_obstruct = group->add_subcommand("bs-obstruct", "spectral BS obstruction");
    bs_obstruct->add_option("file", file_path)->required();
    bs_obstruct->add_option("a", name_a)->required();
    bs_obstruct->add_option("b", name_b)->required();
    bs_obstruct->add_option("m", arg_m)->required();
    bs_obstruct->add_option("n", arg_n)->required();
    bs_obstruct->add_option("--s-max", s_max, "largest power of b probed");

    CLI::App* nilp = group->add_subcommand("nilp-check", "nilpotent commutator identity");
    nilp->add_option("file", file_path)->required();
    nilp->add_option("u", name_a)->required();
    nilp->add_option("v", name_b)->required();
    nilp->add_option("p", arg_p)->required();
    nilp->add_option("q", arg_q)->required();

    CLI::App* word_cmd = group->add_subcommand("word", "evaluate a word in the generators");
    word_cmd->add_option("file", file_path)->required();
    word_cmd->add_option("group", group_name)->required();
    word_cmd
        ->add_option("letters", word_spec,
                     "comma-separated signed 1-based generator indices, rightmost first")
        ->required();

    CLI::App* ball = group->add_subcommand("ball", "word lengths by ball enumeration");
    ball->add_option("file", file_path)->required();
    ball->add_option("group", group_name)->required();
    ball->add_option("--radius", radius, "ball radius (<= 8)");
    ball->add_option("targets", targets, "map names to locate")->required();

    CLI11_PARSE(app, argc, argv);

    cfg.dynamics.horizon = horizon;
    cfg.dynamics.max_period = max_period;
    cfg.dynamics.guard = static_cast<size_t>(guard);

    const std::string command = app.get_subcommands().front()->get_name();
    auto start = std::chrono::steady_clock::now();
    try {
        aiet::MapFile mf = aiet::load_map_file(file_path);
        if (analyze->parsed())
            return emit(aiet::cmd_analyze(mf, map_name, cfg), file_path, start);
        if (normalize->parsed())
            return emit(aiet::cmd_normalize(mf, map_name, cfg), file_path, start);
        if (certify->parsed()) {
            std::optional<std::string> grp;
            if (!group_name.empty()) grp = group_name;
            return emit(aiet::cmd_certify(mf, map_name, grp, cfg), file_path, start);
        }
        if (bs_check->parsed())
            return emit(aiet::cmd_group_bs_check(mf, name_a, name_b, arg_m, arg_n, cfg),
                        file_path, start);
        if (bs_obstruct->parsed())
            return emit(aiet::cmd_group_bs_obstruct(mf, name_a, name_b, arg_m, arg_n, s_max, cfg),
                        file_path, start);
        if (nilp->parsed())
            return emit(aiet::cmd_group_nilp_check(mf, name_a, name_b, arg_p, arg_q, cfg),
                        file_path, start);
        if (word_cmd->parsed()) {
            std::vector<int> word;
            size_t pos = 0;
            while (pos < word_spec.size()) {
                size_t comma = word_spec.find(',', pos);
                if (comma == std::string::npos) comma = word_spec.size();
                word.push_back(std::stoi(word_spec.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            return emit(aiet::cmd_group_word(mf, group_name, word, cfg), file_path, start);
        }
        if (ball->parsed())
            return emit(aiet::cmd_group_ball(mf, group_name, radius, targets, cfg), file_path,
                        start);
    } catch (const aiet::ParseError& e) {
        return emit_error(command, "parse_error", e.what(), 4);
    } catch (const aiet::ScalarParseError& e) {
        return emit_error(command, "parse_error", e.what(), 4);
    } catch (const aiet::HorizonExceeded& e) {
        return emit_error(command, "inconclusive", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error(command, "validation_error", e.what(), 3);
    }
    return 1;
}
