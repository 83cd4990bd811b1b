#include "commands.hpp"

#include "polytope/error.hpp"
#include "polytope_io/json_io.hpp"

#include <algorithm>
#include <iostream>

namespace {

using polytope::ParameterError;
using polytope::io::Json;

std::string config_value(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ParameterError("config field '" + key + "': expected a string, number, boolean or array of those");
}

// Config fields replace whatever the command line set for the same option.
void apply_config(CLI::App& sub, const Json& config) {
  for (const auto& [key, value] : config.items()) {
    if (key == "mode" || key == "config") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = sub.get_option_no_throw(flag);
    if (opt == nullptr) throw ParameterError("config field '" + key + "': not an option of " + sub.get_name());
    opt->clear();
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(config_value(v, key));
    } else {
      opt->add_result(config_value(value, key));
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& err) {
      throw ParameterError("config field '" + key + "': " + err.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytope-code workbench: generator matrices, packet coding, attack simulation, "
               "undecodable witnesses and Byzantine storage scenarios."};
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON object whose fields override flags of the same name; 'mode' selects the subcommand");

  std::vector<polytope::cli::Command> commands;
  polytope::cli::add_codec_commands(app, commands);
  polytope::cli::add_dss_commands(app, commands);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    Json config = Json::object();
    if (!config_path.empty()) {
      config = polytope::io::read_json_file(config_path);
      if (!config.is_object()) throw ParameterError("config: expected a JSON object");
    }
    CLI::App* selected = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (config.contains("mode")) {
      if (!config["mode"].is_string()) throw ParameterError("config field 'mode': expected a string");
      const std::string mode = config["mode"].get<std::string>();
      CLI::App* named = app.get_subcommand_no_throw(mode);
      if (named == nullptr) throw ParameterError("config field 'mode': unknown mode '" + mode + "'");
      if (selected != nullptr && selected != named)
        throw ParameterError("config field 'mode': '" + mode + "' conflicts with subcommand " + selected->get_name());
      selected = named;
    }
    if (selected == nullptr) {
      std::cerr << app.help();
      return 2;
    }
    auto& command = *std::find_if(commands.begin(), commands.end(),
                                  [&](const polytope::cli::Command& c) { return c.app == selected; });
    apply_config(*command.app, config);
    for (const CLI::Option* opt : command.required)
      if (opt->count() == 0) throw ParameterError(opt->get_name(false, true) + ": required");
    return command.run();
  } catch (const ParameterError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
