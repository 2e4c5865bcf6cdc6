#include "sgefem/errors.hpp"
#include "sgefem/mesh.hpp"
#include "sgefem/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    unsigned seed = 0;  // meshing is deterministic; reserved for future use
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--threads", args.threads, "sweep worker threads")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--seed", args.seed, "reserved");
}

std::string resolve_out(const sgefem::RunConfig& config, const CommonArgs& args) {
    return args.out_dir.empty() ? config.output_dir : args.out_dir;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plane-strain strain gradient elasticity crack solver "
                 "(C1 Bell triangles with crack-tip enrichment)"};
    app.require_subcommand(1);

    CommonArgs run_args, conv_args, size_args, mesh_args;
    CLI::App* cmd_run = app.add_subcommand("run", "solve a single case");
    add_common(cmd_run, run_args);
    CLI::App* cmd_conv =
        app.add_subcommand("converge", "sweep R/ell, M or quadrature");
    add_common(cmd_conv, conv_args);
    CLI::App* cmd_size =
        app.add_subcommand("size-effect", "sweep d/L and ell/L");
    add_common(cmd_size, size_args);
    CLI::App* cmd_mesh =
        app.add_subcommand("mesh-dump", "generate and export the mesh only");
    add_common(cmd_mesh, mesh_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const auto config = sgefem::load_config_file(run_args.config_path);
            const auto summary = sgefem::run_single(config, resolve_out(config, run_args));
            std::printf("mode %s: kt = %.6g, K = [%.6g, %.6g, %.6g, %.6g], "
                        "J = %.6g, Jbar = %.6g, residual = %.3g\n",
                        sgefem::mode_name(config.mode), summary.kt, summary.k.k[0],
                        summary.k.k[1], summary.k.k[2], summary.k.k[3], summary.j,
                        summary.j_normalized, summary.report.residual_norm);
        } else if (cmd_conv->parsed()) {
            auto config = sgefem::load_config_file(conv_args.config_path);
            if (config.study != sgefem::StudyType::Convergence) {
                throw sgefem::ConfigError(
                    "converge: config study.type must be \"convergence\"");
            }
            sgefem::run_convergence(config, resolve_out(config, conv_args),
                                    conv_args.threads);
        } else if (cmd_size->parsed()) {
            auto config = sgefem::load_config_file(size_args.config_path);
            if (config.study != sgefem::StudyType::SizeEffect) {
                throw sgefem::ConfigError(
                    "size-effect: config study.type must be \"size-effect\"");
            }
            sgefem::run_size_effect(config, resolve_out(config, size_args),
                                    size_args.threads);
        } else if (cmd_mesh->parsed()) {
            const auto config = sgefem::load_config_file(mesh_args.config_path);
            sgefem::DomainSpec spec;
            spec.half_crack = config.half_crack;
            spec.half_domain = config.half_domain;
            spec.fan_radius = config.fan_radius;
            spec.fan_count = config.fan_count;
            spec.grading = config.grading;
            const auto mesh = sgefem::generate_quarter_mesh(spec);
            const std::string out = resolve_out(config, mesh_args);
            std::filesystem::create_directories(out);
            sgefem::write_mesh_file(mesh, out + "/mesh.txt");
            std::printf("mesh: %zu nodes, %zu elements (%zu enriched), tip node %d\n",
                        mesh.node_count(), mesh.element_count(),
                        mesh.enriched.size(), mesh.tip_node);
        }
    } catch (const sgefem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sgefem::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
