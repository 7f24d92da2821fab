// Copyright 2026 The FTQEM Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: parse, encode, run, repro, bounds.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ftqem/analysis.hpp"
#include "ftqem/codes.hpp"
#include "ftqem/error.hpp"
#include "ftqem/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ftqem::ConfigError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw ftqem::Error("cannot write '" + path + "'");
}

void emit_records(const std::vector<ftqem::RunRecord>& records, const std::string& format,
                  const std::string& path) {
  if (!path.empty()) {
    ftqem::emit(records, format, path);
  } else if (format == "json") {
    ftqem::write_json(records, std::cout);
  } else {
    ftqem::write_csv(records, std::cout);
  }
}

int parse_cmd(const std::string& file) {
  const auto c = ftqem::parse_circuit(read_file(file));
  const auto census = ftqem::gate_census(c);
  nlohmann::json j = {{"qubits", c.num_qubits()},
                      {"clbits", c.num_clbits()},
                      {"gates", c.gates().size()},
                      {"census_c", ftqem::census_c(c)},
                      {"hadamards", census.h}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int encode_cmd(const std::string& file, const std::string& code, const std::string& hmode,
               const std::string& layout, const std::string& out) {
  const auto logical = ftqem::parse_circuit(read_file(file));
  const auto encoded = ftqem::compile_logical(ftqem::CodeSpec::parse(code), logical,
                                              ftqem::parse_hadamard_mode(hmode),
                                              ftqem::parse_layout_kind(layout));
  auto text = ftqem::serialize_circuit(encoded.physical);
  if (!text.empty() && text.back() != '\n') text += '\n';
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    write_file(out + ".layout.json", ftqem::layout_json(encoded).dump(2) + "\n");
  }
  return 0;
}

int run_cmd(const std::string& config, const std::string& format, const std::string& out) {
  emit_records(ftqem::run_experiment(ftqem::load_config(config)), format, out);
  return 0;
}

int repro_cmd(const std::string& scenario, std::uint64_t shots, std::size_t threads,
              const std::string& out_dir, const std::string& format) {
  const auto outputs = ftqem::repro(scenario, shots, threads);
  std::filesystem::create_directories(out_dir);
  for (const auto& o : outputs) {
    const auto path = (std::filesystem::path(out_dir) / (o.name + "." + format)).string();
    ftqem::emit(o.records, format, path);
    std::cout << path << '\n';
  }
  return 0;
}

int bounds_cmd(const ftqem::BoundInputs& in, double epsilon, const std::string& format) {
  const auto report = ftqem::ratio_report(in);
  if (format == "csv") {
    std::cout << ftqem::bound_csv_header() << '\n' << ftqem::bound_csv_row(report) << '\n';
    if (epsilon > 0.0) {
      std::cout << "min_d=" << ftqem::min_d_for_epsilon(in.c(), in.h, in.p, epsilon) << '\n';
    }
    return 0;
  }
  nlohmann::json j = report;
  if (epsilon > 0.0) j["min_d"] = ftqem::min_d_for_epsilon(in.c(), in.h, in.p, epsilon);
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ftqem: encoded circuit simulation and post-selection mitigation"};
  app.require_subcommand(1);

  std::string file;
  auto* parse = app.add_subcommand("parse", "Parse a circuit file and print a summary");
  parse->add_option("file", file, "Circuit file")->required();

  std::string code = "rep:3", hmode = "ft", layout = "interleaved", out;
  auto* encode = app.add_subcommand("encode", "Compile a logical circuit onto a code");
  encode->add_option("file", file, "Logical circuit file")->required();
  encode->add_option("--code", code, "rep:<d> | steane");
  encode->add_option("--hmode", hmode, "nonft | ft | ideal");
  encode->add_option("--layout", layout, "interleaved | blocked");
  encode->add_option("--out", out, "Output circuit path; a .layout.json sidecar is written next to it");

  std::string config, format = "csv";
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config, "Config JSON")->required();
  run->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", out, "Output path (stdout when omitted)");

  std::string scenario, out_dir = ".";
  std::uint64_t shots = 0;
  std::size_t threads = 1;
  auto* rep = app.add_subcommand("repro", "Run a reproduction scenario");
  rep->add_option("scenario", scenario)->required()->check(CLI::IsMember(ftqem::repro_scenarios()));
  rep->add_option("--shots", shots, "Shots per point (scenario default when 0)");
  rep->add_option("--threads", threads, "Worker threads (0 = hardware)");
  rep->add_option("--out", out_dir, "Output directory");
  rep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  ftqem::BoundInputs bin;
  double epsilon = 0.0;
  std::string bformat = "json";
  auto* bounds = app.add_subcommand("bounds", "Evaluate the threshold bounds");
  bounds->set_help_flag("--help", "Print this help message and exit");
  bounds->add_option("--d", bin.d)->required();
  bounds->add_option("--t", bin.t)->required();
  bounds->add_option("--h", bin.h)->required();
  bounds->add_option("--p", bin.p)->required();
  bounds->add_option("--epsilon", epsilon, "Also report the smallest odd d reaching this ratio");
  bounds->add_option("--format", bformat)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse) return parse_cmd(file);
    if (*encode) return encode_cmd(file, code, hmode, layout, out);
    if (*run) return run_cmd(config, format, out);
    if (*rep) return repro_cmd(scenario, shots, threads, out_dir, format);
    if (*bounds) return bounds_cmd(bin, epsilon, bformat);
  } catch (const ftqem::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ftqem::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ftqem::CircuitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ftqem::UnsupportedGate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
