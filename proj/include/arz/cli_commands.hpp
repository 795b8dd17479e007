#pragma once

#include <filesystem>

namespace arz {

struct CmdOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir;
    bool quiet = false;
    bool no_plots = false;
    bool with_oracle = false;  // converge only
};

// Exit codes: 0 ok, 2 config/validation error, 3 numerical failure.
int cmd_run(const CmdOptions& opt);
int cmd_cases(const CmdOptions& opt);
int cmd_converge(const CmdOptions& opt);

}  // namespace arz
