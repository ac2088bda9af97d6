#include "cli/app.hpp"

#include <deque>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "semtrack/error.hpp"

namespace semtrack::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

struct Binding {
    std::string key;
    std::string value;
    bool flag = false;
    CLI::Option* option = nullptr;
};

struct Subcommand {
    Command command;
    CLI::App* app = nullptr;
    std::string config;
    CLI::Option* config_option = nullptr;
    std::deque<Binding> bindings;
};

const char* describe(Command c) {
    switch (c) {
        case Command::Analyze: return "closed-form metrics for one configuration";
        case Command::Simulate: return "seeded slot-by-slot simulation";
        case Command::Optimize: return "optimal randomized stationary policy";
        case Command::Table: return "reproduce a named reference table";
        case Command::Sweep: return "metric over a (pa0, pa1) grid";
        case Command::Compare: return "policy comparison under a sampling budget";
    }
    return "";
}

void bind_key(Subcommand& sub, std::string_view name) {
    const KeySpec* spec = nullptr;
    for (const auto& k : key_schema())
        if (k.name == name) spec = &k;
    auto& b = sub.bindings.emplace_back();
    b.key = std::string(name);
    const std::string flag = "--" + b.key;
    const std::string help(spec->help);
    if (spec->type == KeyType::Flag) {
        b.flag = true;
        b.option = sub.app->add_flag(flag, help);
    } else {
        b.option = sub.app->add_option(flag, b.value, help)->allow_extra_args(false);
    }
}

void write_report(const Report& report, const OutputSpec& output, std::ostream& out) {
    if (output.path) {
        std::ofstream file(*output.path, std::ios::binary);
        if (!file) throw ValidationError("out", "cannot open '" + *output.path + "' for writing");
        if (output.format == Format::Json)
            write_json(file, report);
        else
            write_csv(file, report);
        if (!file) throw Error("failed writing '" + *output.path + "'");
    }
    if (output.pretty)
        write_pretty(out, report);
    else if (output.path)
        return;
    else if (output.format == Format::Json)
        write_json(out, report);
    else
        write_csv(out, report);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"semtrack: remote tracking of a Markov source over an unreliable channel"};
    app.name("semtrack");
    app.require_subcommand(1, 1);

    std::deque<Subcommand> subs;
    for (Command c : {Command::Analyze, Command::Simulate, Command::Optimize, Command::Table, Command::Sweep,
                      Command::Compare}) {
        auto& s = subs.emplace_back();
        s.command = c;
        s.app = app.add_subcommand(std::string(to_string(c)), describe(c));
        s.config_option = s.app->add_option("--config", s.config, "JSON file with the same keys; flags override it");
        for (auto key : keys_for(c)) bind_key(s, key);
        for (auto key : {"out", "format", "pretty"}) bind_key(s, key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        for (const auto& s : subs) {
            if (!s.app->parsed()) continue;
            std::vector<std::pair<std::string, std::string>> flags;
            for (const auto& b : s.bindings)
                if (b.option->count() > 0) flags.emplace_back(b.key, b.flag ? "true" : b.value);
            std::optional<std::string> config;
            if (s.config_option->count() > 0) config = s.config;
            const RunSpec spec = build_run_spec(s.command, config, flags);
            write_report(dispatch(spec), spec.output, out);
            return kExitOk;
        }
        err << "error: no command given\n";
        return kExitInvalid;
    } catch (const ValidationError& e) {
        err << "error: invalid " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DegenerateModelError& e) {
        err << "error: degenerate model: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const DomainError& e) {
        err << "error: undefined quantity: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace semtrack::cli
