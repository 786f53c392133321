#include <iostream>

#include "CLI11.hpp"
#include "hauteur/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"canonical heights for one-parameter families f_t(z) over Q(t)"};
    hauteur::RunConfig cfg;
    app.add_option("command", cfg.command, "divisor|height|series|sweep|count|verify")
        ->required();
    app.add_option("--f", cfg.f_src, "family: polynomial in z with coefficients in Q(t)");
    app.add_option("--P", cfg.P_src, "starting point: rational function of t");
    app.add_option("--t", cfg.t_values, "parameter value, exact rational (repeatable)");
    app.add_option("--order", cfg.order, "correction series order");
    app.add_option("--tol", cfg.tol, "archimedean tolerance");
    app.add_option("--cap", cfg.cap, "iteration cap for specialized orbits");
    app.add_option("--bound", cfg.bound, "sweep height bound H");
    app.add_option("--B", cfg.B, "count height bound");
    app.add_option("--format", cfg.format, "table|json|csv");
    app.add_option("--out", cfg.out, "write output to this path");
    app.add_flag("--strict", cfg.strict, "exit 3 when any result is uncertified");
    app.set_config("--config", "", "flat key=value configuration; flags override");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return hauteur::run_command(cfg, std::cout, std::cerr);
}
