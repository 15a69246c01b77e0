#pragma once

#include "ws/io.hpp"

#include <string>
#include <vector>

namespace wscli {

using ws::Json;

struct OutputFile {
    std::string name;
    std::string sha256;
};

// Collects output files (written immediately) and named pass/fail checks for the manifest.
class RunContext {
public:
    explicit RunContext(std::string out_dir);
    void write(const std::string& name, const std::string& content);
    void check(const std::string& name, bool passed);
    const std::vector<OutputFile>& outputs() const { return outputs_; }
    const Json& checks() const { return checks_; }
    const std::string& out_dir() const { return out_dir_; }

private:
    std::string out_dir_;
    std::vector<OutputFile> outputs_;
    Json checks_ = Json::object();
};

const std::vector<std::string>& command_names();
// Rejects keys outside the schema of the command; throws ws::ValidationError.
void check_schema(const std::string& command, const Json& config);
// Runs one subcommand with a schema-checked config; outputs land in ctx.
void run_command(const std::string& command, const Json& config, RunContext& ctx);

}  // namespace wscli
