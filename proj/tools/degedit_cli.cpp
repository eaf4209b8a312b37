#include "degedit/dp_solver.hpp"
#include "degedit/errors.hpp"
#include "degedit/io.hpp"
#include "degedit/kernelize.hpp"
#include "degedit/oracle.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace degedit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_capacity = 2;

auto solve(const std::string& input, const std::string& method, std::int64_t width_cap) -> int
{
    auto inst = parse_instance(read_file(input));
    std::optional<Solution> answer;
    auto use_dp = method == "dp";
    if (method == "auto") {
        auto width = decompose(inst.graph).width();
        if (width <= width_cap) {
            use_dp = true;
        } else {
            OracleLimits limits;
            if (inst.graph.order() > limits.max_vertices || inst.graph.size() > limits.max_edges)
                throw CapacityError("decomposition width " + std::to_string(width) + " exceeds " + std::to_string(width_cap)
                    + " and the instance is beyond the brute-force limits");
        }
    }
    if (use_dp) {
        answer = solve_exact(inst).solution;
    } else {
        auto report = brute_force_min_cost(inst);
        if (report.feasible)
            answer = report.optima.front();
    }
    std::cout << format_solution(answer);
    return exit_ok;
}

auto kernel(const std::string& input, const std::string& output, const std::string& trace) -> int
{
    auto inst = parse_instance(read_file(input));
    auto result = kernelize(inst);
    write_file(output, write_instance(result.instance));
    if (! trace.empty())
        write_file(trace, format_trace(result.log));
    std::cout << "k " << to_string(result.kind) << "\n"
              << "n " << inst.graph.order() << " -> " << result.instance.graph.order() << "\n"
              << "certified " << (result.certified ? "yes" : "no") << "\n";
    if (result.size)
        std::cout << "size " << result.size->describe() << "\n";
    return exit_ok;
}

auto verify(const std::string& original, const std::string& kernel_file) -> int
{
    auto a = parse_instance(read_file(original));
    auto b = parse_instance(read_file(kernel_file));
    std::cout << "equivalent " << (equivalence_check(a, b) ? "yes" : "no") << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"degree-constrained deletion: solve, kernelize, verify, generate"};
    app.require_subcommand(1);

    std::string input, output, trace, method = "auto", original, kernel_file, variant = "plain";
    std::int64_t width_cap = 8;
    GeneratorOptions gen;

    auto* solve_cmd = app.add_subcommand("solve", "minimum-cost solution of an instance");
    solve_cmd->add_option("--input", input, "instance file")->required();
    solve_cmd->add_option("--method", method, "auto, dp or brute")->check(CLI::IsMember({"auto", "dp", "brute"}));
    solve_cmd->add_option("--width-cap", width_cap, "largest decomposition width auto sends to the dynamic program");

    auto* kernel_cmd = app.add_subcommand("kernelize", "write an equivalent kernel");
    kernel_cmd->add_option("--input", input, "instance file")->required();
    kernel_cmd->add_option("--output", output, "kernel file")->required();
    kernel_cmd->add_option("--trace", trace, "rule trace file");

    auto* verify_cmd = app.add_subcommand("verify", "brute-force equivalence of two instances");
    verify_cmd->add_option("--original", original, "instance file")->required();
    verify_cmd->add_option("--kernel", kernel_file, "kernel file")->required();

    auto* gen_cmd = app.add_subcommand("gen", "random planar instance");
    gen_cmd->add_option("--n", gen.n, "vertices")->required();
    gen_cmd->add_option("--kv", gen.k_v, "vertex budget")->required();
    gen_cmd->add_option("--ke", gen.k_e, "edge budget")->required();
    gen_cmd->add_option("--cost-budget", gen.cost_budget, "cost budget")->required();
    gen_cmd->add_option("--variant", variant, "plain or connected")->check(CLI::IsMember({"plain", "connected"}));
    gen_cmd->add_option("--seed", gen.seed, "random seed")->required();
    gen_cmd->add_option("--output", output, "instance file")->required();
    gen_cmd->add_flag("--raw", gen.raw, "uniform degree targets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*solve_cmd)
            return solve(input, method, width_cap);
        if (*kernel_cmd)
            return kernel(input, output, trace);
        if (*verify_cmd)
            return verify(original, kernel_file);
        gen.variant = variant == "connected" ? Variant::connected : Variant::plain;
        write_file(output, write_instance(generate_random_planar_instance(gen)));
        return exit_ok;
    } catch (const CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return exit_capacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
