#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <subcoord/commands.hpp>

namespace {

using subcoord::Report;
using subcoord::Status;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

int emit(const Report& r, bool json) {
    std::cout << (json ? r.json() : r.text());
    return subcoord::exit_code(r.status);
}

Report io_failure(const std::string& command, const std::string& what) {
    Report r;
    r.command = command;
    r.status = Status::error;
    r.message = what;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subspace coordination and linear coded-caching toolkit"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit a JSON report instead of text");

    std::string path;
    auto* verify = app.add_subcommand("verify", "Check that every user decodes every supplied demand");
    verify->add_option("scheme", path, "Scheme file, or - for stdin")->required();

    subcoord::commands::DiscoordOptions dopt;
    auto* discoord = app.add_subcommand("discoord", "Discoordination of a subspace family");
    discoord->add_option("family", path, "Family file, or - for stdin")->required();
    discoord->add_flag("--brute", dopt.brute, "Also run the exhaustive oracle");
    discoord->add_flag("--minimizer", dopt.minimizer, "Print the greedy minimizer parts X_j");
    discoord->add_flag("--profile", dopt.profile, "Print the d_1..d_m profile");

    auto* decompose3 = app.add_subcommand("decompose3", "Split a three-member family into U1 and U2");
    decompose3->add_option("family", path, "Family file, or - for stdin")->required();

    std::optional<int> user;
    auto* zdecomp = app.add_subcommand("zdecomp", "Decompose caches of an N=3 scheme into pure pieces");
    zdecomp->add_option("scheme", path, "Scheme file, or - for stdin")->required();
    zdecomp->add_option("--user", user, "Only this cache");

    auto* analyze = app.add_subcommand("analyze", "Rates, ratios, bound rows and discoordination audit");
    analyze->add_option("scheme", path, "Scheme file, or - for stdin")->required();

    std::string name, out_path;
    std::optional<int> F;
    auto* gen = app.add_subcommand("gen", "Write a built-in scheme");
    gen->add_option("name", name, "Built-in name")->required()->check(CLI::IsMember(subcoord::caching::builtin_names()));
    gen->add_option("--F", F, "Bits per document");
    gen->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::vector<int> demand;
    std::string mode = "exhaustive";
    bool append = false;
    auto* search = app.add_subcommand("search", "Find a small broadcast for one demand");
    search->add_option("scheme", path, "Scheme file, or - for stdin")->required();
    search->add_option("--demand", demand, "Demanded document of each user")->required()->expected(1, 64);
    search->add_option("--mode", mode, "exhaustive or greedy")->check(CLI::IsMember({"exhaustive", "greedy"}));
    search->add_flag("--section", append, "Print only the X section, ready to append to the scheme file");

    std::uint64_t seed = 1;
    std::size_t count = 200;
    auto* oracle = app.add_subcommand("oracle", "Seeded brute-force cross-validation");
    oracle->add_option("--seed", seed, "Random seed");
    oracle->add_option("--count", count, "Random instances per check");

    CLI11_PARSE(app, argc, argv);
    namespace cmd = subcoord::commands;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*verify) return emit(cmd::verify(read_input(path)), json);
        if (*discoord) return emit(cmd::discoord(read_input(path), dopt), json);
        if (*decompose3) return emit(cmd::decompose3(read_input(path)), json);
        if (*zdecomp) return emit(cmd::zdecomp(read_input(path), user), json);
        if (*analyze) return emit(cmd::analyze(read_input(path)), json);
        if (*oracle) return emit(cmd::oracle(seed, count), json);
        if (*search) {
            std::string section;
            const auto m = mode == "greedy" ? subcoord::caching::SearchMode::greedy : subcoord::caching::SearchMode::exhaustive;
            const Report r = cmd::search(read_input(path), demand, m, &section);
            if (append && r.status == Status::pass) {
                std::cout << section;
                return 0;
            }
            return emit(r, json);
        }
        if (*gen) {
            Report r = cmd::guarded("gen", [&](Report& rep) {
                const auto s = subcoord::caching::builtin(name, F);
                const std::string text = subcoord::caching::serialize_scheme(s);
                if (out_path.empty()) {
                    std::cout << text;
                    return;
                }
                std::ofstream out(out_path);
                if (!out) throw InputError("cannot write '" + out_path + "'");
                out << text;
                rep.set("name", name).set("F", s.F()).set("output", out_path);
            });
            if (out_path.empty() && r.status == Status::pass) return 0;
            return emit(r, json);
        }
    } catch (const InputError& e) {
        return emit(io_failure(command, e.what()), json);
    }
    return 2;
}
