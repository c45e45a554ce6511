#include <CLI11.hpp>
#include <iostream>

#include "dglie/run.hpp"

// Exit codes: 0 pass, 1 verdict failure, 2 usage or parse error.
int main(int argc, char** argv) {
    CLI::App app{"exact computations with differential graded Lie algebras: homology, homotopy "
                 "transfer, higher Whitehead products"};
    app.require_subcommand(1);

    std::string path, json_path, retract_file, classes, target, theorem, strategy = "echelon";
    std::string out_path, emit_model, spheres;
    int max_degree = 0, arity = 3, budget = 400, leaves = 0, max_len = 3;
    uint64_t seed = 0;
    bool check_dsq = false, solve_phi = false;

    auto add_common = [&](CLI::App* c, bool with_file = true) {
        if (with_file) c->add_option("file", path, "DGL description file")->required();
        c->add_option("--max-degree", max_degree, "override the degree cap");
        c->add_option("--seed", seed, "random retract seed (default: canonical greedy retract)");
        c->add_option("--json", json_path, "write the machine-readable report to this path");
        c->add_option("--retract-file", retract_file, "load the retract from a serialized file");
    };

    auto* trees = app.add_subcommand("trees", "tree classes with automorphism orders");
    trees->add_option("--leaves", leaves, "number of leaves")->required();
    trees->add_option("--json", json_path, "write the report to this path");

    auto* check = app.add_subcommand("check", "structural checks: d^2 = 0, bracket identities");
    add_common(check);

    auto* homology = app.add_subcommand("homology", "homology dimensions and representatives");
    add_common(homology);

    auto* retract = app.add_subcommand("retract", "build and verify a homotopy retract");
    add_common(retract);
    retract->add_option("--out", out_path, "write the serialized retract to this path");

    auto* transfer = app.add_subcommand("transfer", "transferred L-infinity brackets on homology");
    add_common(transfer);
    transfer->add_option("--arity", arity, "largest bracket arity (default 3)");

    auto* coalgebra = app.add_subcommand("coalgebra", "Quillen chains and coderivations");
    add_common(coalgebra);
    coalgebra->add_flag("--check-dsq", check_dsq, "verify delta^2 = 0 on wedge words");
    coalgebra->add_option("--max-len", max_len, "wedge word length bound (default 3)");
    coalgebra->add_flag("--solve-phi", solve_phi, "solve for the certificate element Phi");
    coalgebra->add_option("--classes", classes, "';'-separated cycle expressions");
    coalgebra->add_option("--target", target, "target cycle expression");
    coalgebra->add_option("--arity", arity, "table arity for the coderivations");

    auto* whitehead = app.add_subcommand("whitehead", "higher Whitehead bracket elements");
    add_common(whitehead);
    whitehead->add_option("--spheres", spheres, "comma-separated sphere dimensions")->required();
    whitehead->add_option("--classes", classes, "';'-separated cycle expressions, one per sphere");
    whitehead->add_option("--target", target, "probe membership of this class");
    whitehead->add_option("--budget", budget, "probe evaluation budget (default 400)");
    whitehead->add_option("--strategy", strategy, "extension strategy: echelon | kimage");
    whitehead->add_option("--emit-model", emit_model, "write the wedge model as a DGL file");

    auto* verify = app.add_subcommand("verify", "machine-check the statements on a fixture");
    add_common(verify);
    verify->add_option("--theorem", theorem, "elprime | main1 | elsegundo | example37")
        ->required();
    verify->add_option("--spheres", spheres, "comma-separated sphere dimensions");
    verify->add_option("--classes", classes, "';'-separated cycle expressions");
    verify->add_option("--budget", budget, "probe budget for example37");

    // `whitehead --emit-model` may run without a file
    whitehead->get_option("file")->required(false);

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> args;
    auto push = [&](const std::string& flag, const std::string& value) {
        if (!value.empty()) {
            args.push_back(flag);
            args.push_back(value);
        }
    };
    if (trees->parsed()) {
        args = {"trees", "--leaves", std::to_string(leaves)};
    } else {
        args.push_back(app.get_subcommands().front()->get_name());
        if (!path.empty()) args.push_back(path);
        if (max_degree) push("--max-degree", std::to_string(max_degree));
        if (seed) push("--seed", std::to_string(seed));
        push("--retract-file", retract_file);
        if (transfer->parsed() || coalgebra->parsed())
            push("--arity", std::to_string(arity));
        if (coalgebra->parsed()) {
            if (check_dsq) args.push_back("--check-dsq");
            if (solve_phi) args.push_back("--solve-phi");
            push("--max-len", std::to_string(max_len));
        }
        push("--classes", classes);
        push("--target", target);
        push("--spheres", spheres);
        push("--theorem", theorem);
        push("--out", out_path);
        push("--emit-model", emit_model);
        if (whitehead->parsed()) {
            push("--strategy", strategy);
            push("--budget", std::to_string(budget));
        }
        if (verify->parsed()) push("--budget", std::to_string(budget));
    }
    push("--json", json_path);

    dglie::RunResult rr = dglie::run_command(args);
    std::cout << rr.text;
    return rr.exit_code;
}
