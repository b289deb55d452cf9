// paige: command-line front end for the Zorn algebra and Paige loop checks.

#include <paige/commands.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

bool env_force() {
    const char* v = std::getenv("PAIGE_FORCE");
    return v && *v && std::string(v) != "0";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split octonions over finite fields and the Paige loops M(q)"};
    app.require_subcommand(1);

    paige::CommandConfig cfg;
    std::string checks;
    std::uint64_t sample = 0, seed = 0;

    auto add_common = [&](CLI::App* sub, bool field_default) {
        auto* f = sub->add_option("--field", cfg.field, "q | gf:p | gf:p^k | gf:p^k:c0,...,ck");
        if (field_default) f->capture_default_str();
        sub->add_flag("--json", cfg.json, "JSON output");
        sub->add_flag("--force", cfg.force, "lift feasibility guards (also PAIGE_FORCE=1)");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_flag("--exhaustive", cfg.exhaustive, "sweep every element or pair");
        sub->add_option("--sample", sample, "number of seeded random samples");
        sub->add_option("--seed", seed, "sampling seed (required with --sample)");
    };

    auto* identities = app.add_subcommand("identities", "sweep the algebra identities of C(F)");
    add_common(identities, true);
    add_mode(identities);

    auto* paige = app.add_subcommand("paige", "build M0(q) and M(q) and run checks");
    add_common(paige, true);
    add_mode(paige);
    paige->add_option("--check", checks, "order,moufang,center,simple,antiautomorphism,nonassociative");

    auto* exp = app.add_subcommand("export", "write Cayley tables of M0(q) (and M(q) to PATH.M)");
    add_common(exp, true);
    exp->add_option("--out", cfg.out, "output path")->required();

    auto* mul = app.add_subcommand("mul", "multiply two matrices [a1;x,y,z|x,y,z;a2]");
    add_common(mul, true);
    std::string lhs, rhs;
    mul->add_option("lhs", lhs, "left factor")->required();
    mul->add_option("rhs", rhs, "right factor")->required();

    auto* f5 = app.add_subcommand("f5-witness", "element of order 4 over GF(5) squaring to -1");
    f5->add_flag("--json", cfg.json, "JSON output");

    auto* info = app.add_subcommand("field-info", "describe a field");
    add_common(info, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : paige::kExitUsage;
    }

    for (auto* sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
        if (auto* o = sub->get_option_no_throw("--sample"); o && o->count()) cfg.sample = sample;
        if (auto* o = sub->get_option_no_throw("--seed"); o && o->count()) cfg.seed = seed;
    }
    if (mul->parsed()) cfg.operands = {lhs, rhs};
    if (env_force()) cfg.force = true;
    if (!checks.empty()) {
        std::size_t start = 0;
        while (start <= checks.size()) {
            const auto comma = checks.find(',', start);
            const auto item = checks.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!item.empty()) cfg.checks.push_back(item);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    try {
        return paige::run_command(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return paige::kExitFailure;
    }
}
