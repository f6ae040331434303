#pragma once

#include "heightforge/cli/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

// Whitespace-separated words; single quotes group.
inline std::vector<std::string> split_command(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, have = false;
    for (char c : line) {
        if (c == '\'') {
            quoted = !quoted;
            have = true;
        } else if (!quoted && (c == ' ' || c == '\t')) {
            if (have)
                out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (have)
        out.push_back(cur);
    return out;
}

inline std::vector<std::string> commands(const std::string& dir) {
    std::ifstream in(dir + "/commands.txt");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            out.push_back(line);
    return out;
}

struct Outcome {
    std::string out, err;
    int code;
};

inline Outcome run(const std::string& line, const std::string& dir) {
    std::vector<std::string> args = split_command(line);
    for (auto& a : args)
        if (auto p = a.find("@DIR@"); p != std::string::npos)
            a.replace(p, 5, dir);
    std::ostringstream out, err;
    int code = heightforge::run_cli(args, out, err);
    return {out.str(), err.str(), code};
}

// The transcript compared byte for byte against expected.txt.
inline std::string transcript(const std::string& dir) {
    std::string t;
    for (const auto& line : commands(dir)) {
        Outcome o = run(line, dir);
        t += "$ " + line + "\n" + o.out;
        if (!o.err.empty())
            t += "! " + o.err;
        t += "exit " + std::to_string(o.code) + "\n";
    }
    return t;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace golden
