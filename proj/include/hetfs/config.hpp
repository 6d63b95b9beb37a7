#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>

#include "hetfs/error.hpp"

namespace hetfs {

// Flat key=value project configuration. Precedence: built-in defaults,
// then the config file, then HETFS_* environment variables, then
// command-line flags (applied by the CLI layer). Unknown keys are
// rejected.
struct ProjectConfig {
    std::string schema_file;
    std::string nodes_file;
    std::string edges_file;
    std::string text_file;
    std::string stopwords_file;
    std::string labels_file;
    std::string workdir = "hetfs_work";

    double c = 0.8;
    double c_n = 0.85;
    double tol = 1e-8;
    std::uint32_t max_iter = 100;
    double epsilon = 0.000005;
    std::uint32_t k = 10;
    std::uint64_t seed = 1;
    std::uint64_t walks = 100000;
    std::string engine = "exact";        // exact | mc | pathsim | simrank
    std::string content_mode = "node";   // node | pair | off
    std::string target_relation;

    void set(const std::string& key, const std::string& value) {
        try {
            if (key == "schema") schema_file = value;
            else if (key == "nodes") nodes_file = value;
            else if (key == "edges") edges_file = value;
            else if (key == "text") text_file = value;
            else if (key == "stopwords") stopwords_file = value;
            else if (key == "labels") labels_file = value;
            else if (key == "workdir") workdir = value;
            else if (key == "c") c = std::stod(value);
            else if (key == "c_n") c_n = std::stod(value);
            else if (key == "tol") tol = std::stod(value);
            else if (key == "max_iter") max_iter = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "epsilon") epsilon = std::stod(value);
            else if (key == "k") k = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "seed") seed = std::stoull(value);
            else if (key == "walks") walks = std::stoull(value);
            else if (key == "engine") engine = value;
            else if (key == "content_mode") content_mode = value;
            else if (key == "target_relation") target_relation = value;
            else raise(Errc::invalid_parameter, "unknown config key '" + key + "'");
        } catch (const std::invalid_argument&) {
            raise(Errc::invalid_parameter, "bad value '" + value + "' for config key '" + key + "'");
        } catch (const std::out_of_range&) {
            raise(Errc::invalid_parameter, "bad value '" + value + "' for config key '" + key + "'");
        }
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) raise(Errc::io_error, "cannot open config '" + path + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                raise(Errc::format_error,
                      path + ":" + std::to_string(line_no) + ": expected key=value");
            set(line.substr(0, eq), line.substr(eq + 1));
        }
    }

    // HETFS_<KEY> environment overrides, e.g. HETFS_EPSILON, HETFS_WORKDIR.
    void apply_env() {
        static const char* keys[] = {"schema", "nodes",   "edges",   "text",  "stopwords",
                                     "labels", "workdir", "c",       "c_n",   "tol",
                                     "max_iter", "epsilon", "k",     "seed",  "walks",
                                     "engine", "content_mode", "target_relation"};
        for (const char* key : keys) {
            std::string env_name = "HETFS_";
            for (const char* p = key; *p; ++p)
                env_name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
            if (const char* value = std::getenv(env_name.c_str())) set(key, value);
        }
    }

    void validate() const {
        if (!(c > 0 && c < 1)) raise(Errc::invalid_parameter, "c must lie in (0, 1)");
        if (!(c_n > 0 && c_n < 1)) raise(Errc::invalid_parameter, "c_n must lie in (0, 1)");
        if (epsilon < 0) raise(Errc::invalid_parameter, "epsilon must be non-negative");
        if (k == 0) raise(Errc::invalid_parameter, "k must be at least 1");
        if (engine != "exact" && engine != "mc" && engine != "pathsim" && engine != "simrank")
            raise(Errc::invalid_parameter, "engine must be exact, mc, pathsim or simrank");
        if (content_mode != "node" && content_mode != "pair" && content_mode != "off")
            raise(Errc::invalid_parameter, "content_mode must be node, pair or off");
    }
};

}  // namespace hetfs
