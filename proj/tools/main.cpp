#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "glift/errors.hpp"
#include "glift/json_io.hpp"

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw glift::SchemaError("cannot open input file: " + path);
    nlohmann::json doc;
    in >> doc;
    return doc;
}

void write_output(const nlohmann::json& report, const std::string& path) {
    if (path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    out << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glift: lifting obstructions, gerbe curvature and holonomy over good covers"};
    app.require_subcommand(1);

    std::string input, output;
    bool summary = false;
    int threads = 1;
    long long seed = -1;

    const std::vector<std::string> commands = {"cohomology", "obstruct",    "tower",  "trivialize", "curvature",
                                               "chern",      "holonomy",    "td-holonomy", "prop1-check", "verify"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", input, "problem document (JSON)")->required();
        sub->add_option("--output", output, "report path (default: stdout)");
        sub->add_flag("--summary", summary, "print a human-readable summary to stderr");
        sub->add_option("--threads", threads, "parallelism cap")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed echoed into the report");
    }

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        nlohmann::json doc = read_json_file(input);
        glift::cli::RunOutcome outcome;
        if (command == "verify") {
            outcome = glift::cli::verify_report(doc);
        } else {
            if (doc.contains("command") && doc.at("command").get<std::string>() != command) {
                std::cerr << "document command \"" << doc.at("command").get<std::string>()
                          << "\" does not match subcommand \"" << command << "\"\n";
                return 2;
            }
            outcome = glift::cli::run_document(doc, seed);
        }
        if (outcome.exit_code == 0) write_output(outcome.report, output);
        if (summary || outcome.exit_code != 0) std::cerr << outcome.summary << "\n";
        return outcome.exit_code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const glift::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
