#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace relief::cli {

/**
 * @brief Entry point shared by the `relief` binary and the tests.
 *
 * `args` excludes the program name, e.g. {"generate", "--features", "a.rfm",
 * "--out", "p.jsonl"}. Returns the process exit code: 0 when every output was
 * fully written, 1 on any I/O or validation failure (message on `err`).
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands files and directories (every *.rfm inside, sorted) into RFM1 paths.
std::vector<std::filesystem::path> collect_feature_files(const std::vector<std::string>& inputs);

/// Reads RELIEF_LOG (error|info|debug) and installs the stderr logger.
void configure_logging();

}  // namespace relief::cli
