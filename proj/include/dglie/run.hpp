#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace dglie {

// Process-style result of one subcommand: 0 pass, 1 verdict failure,
// 2 usage or parse error.
struct RunResult {
    int exit_code = 0;
    std::string text;      // human-readable report
    nlohmann::json report; // machine-readable report
};

struct RunOptions {
    int max_degree = 0;        // 0 = use the file's cap
    uint64_t seed = 0;         // 0 = canonical greedy retract
    bool seeded = false;
    std::string retract_file;  // overrides seed when set
    int arity = 3;
    int budget = 400;
    std::string classes;       // ';'-separated expressions
    std::string target;        // expression
    std::vector<int> spheres;
    std::string strategy = "echelon";
    std::string emit_model;
    std::string theorem;
    int leaves = 0;
    int max_len = 3;           // wedge word length for --check-dsq
    bool check_dsq = false;
    bool solve_phi_flag = false;
};

RunResult run_trees(const RunOptions& opt);
RunResult run_check(const std::string& path, const RunOptions& opt);
RunResult run_homology(const std::string& path, const RunOptions& opt);
RunResult run_retract(const std::string& path, const RunOptions& opt, const std::string& out_path);
RunResult run_transfer(const std::string& path, const RunOptions& opt);
RunResult run_coalgebra(const std::string& path, const RunOptions& opt);
RunResult run_whitehead(const std::string& path, const RunOptions& opt);
RunResult run_verify(const std::string& path, const RunOptions& opt);

// Dispatch by subcommand name; used by the python module.
RunResult run_command(const std::vector<std::string>& args);

}  // namespace dglie
