// Runs the benchmark examples and prints error, estimator and effectivity
// tables. CSV goes to --out when given.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "expmid/phifun.hpp"
#include "expmid/suite.hpp"

namespace {

std::vector<int> parse_steps(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad step count '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential midpoint runs with a posteriori error estimators"};

    expmid::RunConfig cfg;
    std::string steps;
    std::string method = "spectral";
    std::string table = "all";
    std::string out;

    app.add_option("--example", cfg.example, "Example 1-4")->check(CLI::Range(1, 4));
    app.add_option("--space", cfg.M, "Number of spatial intervals M (default 100, 80 for example 4)");
    app.add_option("--steps", steps, "Comma-separated time step counts N");
    app.add_option("--phi-method", method, "spectral, dense or krylov")
        ->check(CLI::IsMember({"spectral", "dense", "krylov"}));
    app.add_option("--krylov-dim", cfg.phi.krylov_max_dim, "Maximum Krylov dimension");
    app.add_option("--krylov-tol", cfg.phi.krylov_tol, "Krylov residual tolerance");
    app.add_option("--fp-tol", cfg.semilinear.fp_tol, "Fixed-point stage tolerance");
    app.add_option("--fp-max-iter", cfg.semilinear.fp_max_iter, "Fixed-point iteration limit");
    app.add_option("--epsilon", cfg.epsilon, "Diffusion coefficient for example 4");
    app.add_option("--table", table, "errors, estimators, effectivity or all")
        ->check(CLI::IsMember({"errors", "estimators", "effectivity", "all"}));
    app.add_option("--out", out, "CSV output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!steps.empty()) cfg.steps = parse_steps(steps);
        cfg.phi.method = expmid::parse_phi_method(method);
        const auto res = expmid::run_suite(cfg);
        std::cout << expmid::render_text(res, table);
        if (!out.empty()) {
            std::ofstream f(out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open " + out);
            f << expmid::render_csv(res);
            if (!f) throw std::runtime_error("failed writing " + out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
