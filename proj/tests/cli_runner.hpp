#pragma once

// Runs the installed CLI binary (path injected by the build) and captures
// exit code plus stdout. stderr is dropped; the exit-code contract carries
// the failure information the tests need.

#include <cstdio>
#include <string>
#include <sys/wait.h>

struct CliResult {
    int code = -1;
    std::string out;
};

inline CliResult run_cli(const std::string& args) {
    const std::string command = std::string(MIRRORSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.out.append(buffer, n);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}
