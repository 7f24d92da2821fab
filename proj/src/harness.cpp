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

#include "ftqem/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ftqem/analysis.hpp"
#include "ftqem/density_matrix.hpp"
#include "ftqem/error.hpp"

namespace ftqem {

namespace {

constexpr std::size_t kDensityCap = 12;

bool has_measurement(const Circuit& c) {
  return std::any_of(c.gates().begin(), c.gates().end(),
                     [](const Gate& g) { return g.kind == GateKind::Measure; });
}

std::string zeros(std::size_t n) { return std::string(n, '0'); }

OutcomeDistribution exact_distribution(const Circuit& circuit, const NoiseModel& model,
                                       const std::vector<std::size_t>& discard = {}) {
  if (circuit.num_qubits() <= kDensityCap) {
    DmOptions opt;
    opt.max_qubits = kDensityCap;
    opt.discard_clbits = discard;
    return run_dm(circuit, model, opt);
  }
  if (model.is_noiseless()) return enumerate_outcomes(circuit);
  throw SimulationError("exact backend: " + std::to_string(circuit.num_qubits()) +
                        " qubits exceeds the density-matrix cap of " + std::to_string(kDensityCap) +
                        " for a noisy model");
}

template <typename T>
T get_field(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: field '" + key + "' has the wrong type");
  }
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

Backend parse_backend(std::string_view text) {
  if (text == "exact") return Backend::Exact;
  if (text == "mc") return Backend::MonteCarlo;
  throw ConfigError("unknown backend '" + std::string(text) + "' (expected exact|mc)");
}

std::string_view to_string(Backend backend) { return backend == Backend::Exact ? "exact" : "mc"; }

void ExperimentConfig::validate() const {
  if (circuit.empty() == circuit_file.empty()) {
    throw ConfigError("config: give exactly one of 'circuit' and 'circuit_file'");
  }
  for (auto d : sweep) {
    if (d < 1) throw ConfigError("config: sweep distances must be >= 1");
  }
  if (!sweep.empty() && code == "steane") throw ConfigError("config: a sweep applies to the repetition code");
  if (backend == Backend::MonteCarlo && shots == 0) throw ConfigError("config: shots must be positive");
  for (char ch : init) {
    if (ch != '0' && ch != '1') throw ConfigError("config: init must be a 0/1 string");
  }
  noise.validate();
  if (policy.kind == DecodePolicy::Kind::Correct && strategy != Strategy::DM) {
    throw ConfigError("config: correction policies require the dm strategy");
  }
  codes();
}

Circuit ExperimentConfig::load_circuit() const {
  std::string text = circuit;
  if (text.empty()) {
    std::ifstream in(circuit_file);
    if (!in) throw ConfigError("config: cannot read circuit file '" + circuit_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  auto c = parse_circuit(text);
  if (!init.empty() && init.size() != c.num_qubits()) {
    throw ConfigError("config: init has " + std::to_string(init.size()) + " bits for " +
                      std::to_string(c.num_qubits()) + " logical qubits");
  }
  return c;
}

std::vector<CodeSpec> ExperimentConfig::codes() const {
  std::vector<CodeSpec> out;
  if (sweep.empty()) {
    out.push_back(CodeSpec::parse(code));
  } else {
    for (auto d : sweep) out.push_back(CodeSpec::repetition(d));
  }
  return out;
}

void to_json(nlohmann::json& j, const ExperimentConfig& cfg) {
  j = nlohmann::json::object();
  if (!cfg.circuit.empty()) j["circuit"] = cfg.circuit;
  if (!cfg.circuit_file.empty()) j["circuit_file"] = cfg.circuit_file;
  j["code"] = cfg.code;
  if (!cfg.sweep.empty()) j["sweep"] = cfg.sweep;
  j["hmode"] = std::string(to_string(cfg.hmode));
  j["noise"] = cfg.noise;
  j["strategy"] = std::string(to_string(cfg.strategy));
  j["policy"] = cfg.policy.name();
  j["backend"] = std::string(to_string(cfg.backend));
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  if (!cfg.init.empty()) j["init"] = cfg.init;
  j["noiseless_tail"] = cfg.noiseless_tail;
  j["layout"] = cfg.layout == LayoutKind::Interleaved ? "interleaved" : "blocked";
  j["threads"] = cfg.threads;
  j["engine"] = cfg.engine == TrajectoryEngine::Frame ? "frame" : "tableau";
  if (!cfg.label.empty()) j["label"] = cfg.label;
}

void from_json(const nlohmann::json& j, ExperimentConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  cfg = ExperimentConfig{};
  for (const auto& [key, value] : j.items()) {
    if (key == "circuit") cfg.circuit = get_field<std::string>(value, key);
    else if (key == "circuit_file") cfg.circuit_file = get_field<std::string>(value, key);
    else if (key == "code") cfg.code = get_field<std::string>(value, key);
    else if (key == "sweep") cfg.sweep = get_field<std::vector<std::size_t>>(value, key);
    else if (key == "hmode") cfg.hmode = parse_hadamard_mode(get_field<std::string>(value, key));
    else if (key == "noise") cfg.noise = value.get<NoiseModel>();
    else if (key == "strategy") cfg.strategy = parse_strategy(get_field<std::string>(value, key));
    else if (key == "policy") cfg.policy = DecodePolicy::parse(get_field<std::string>(value, key));
    else if (key == "backend") cfg.backend = parse_backend(get_field<std::string>(value, key));
    else if (key == "shots") cfg.shots = get_field<std::uint64_t>(value, key);
    else if (key == "seed") cfg.seed = get_field<std::uint64_t>(value, key);
    else if (key == "init") cfg.init = get_field<std::string>(value, key);
    else if (key == "noiseless_tail") cfg.noiseless_tail = get_field<bool>(value, key);
    else if (key == "layout") cfg.layout = parse_layout_kind(get_field<std::string>(value, key));
    else if (key == "threads") cfg.threads = get_field<std::size_t>(value, key);
    else if (key == "engine") {
      const auto e = get_field<std::string>(value, key);
      if (e == "frame") cfg.engine = TrajectoryEngine::Frame;
      else if (e == "tableau") cfg.engine = TrajectoryEngine::Tableau;
      else throw ConfigError("config: engine must be frame or tableau");
    } else if (key == "label") cfg.label = get_field<std::string>(value, key);
    else throw ConfigError("config: unknown field '" + key + "'");
  }
  cfg.validate();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  auto cfg = j.get<ExperimentConfig>();
  if (!cfg.circuit_file.empty() && !cfg.circuit_file.starts_with('/')) {
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) cfg.circuit_file = path.substr(0, slash + 1) + cfg.circuit_file;
  }
  return cfg;
}

void to_json(nlohmann::json& j, const RunRecord& r) {
  j = {{"d", r.d},           {"code", r.code},       {"strategy", r.strategy},
       {"policy", r.policy}, {"backend", r.backend}, {"shots", r.shots},
       {"accepted", r.accepted}, {"post_rate", r.post_rate}, {"sso", r.sso},
       {"seed", r.seed},     {"wall_ms", r.wall_ms}, {"label", r.label}};
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  j.at("d").get_to(r.d);
  j.at("code").get_to(r.code);
  j.at("strategy").get_to(r.strategy);
  j.at("policy").get_to(r.policy);
  j.at("backend").get_to(r.backend);
  j.at("shots").get_to(r.shots);
  j.at("accepted").get_to(r.accepted);
  j.at("post_rate").get_to(r.post_rate);
  j.at("sso").get_to(r.sso);
  j.at("seed").get_to(r.seed);
  j.at("wall_ms").get_to(r.wall_ms);
  r.label = j.value("label", "");
}

OutcomeDistribution ideal_distribution(const ExperimentConfig& cfg) {
  const auto logical = cfg.load_circuit();
  const auto n = logical.num_qubits();
  const bool measured = has_measurement(logical);
  Circuit c(n, measured ? logical.num_clbits() : 0);
  for (std::size_t q = 0; q < cfg.init.size(); ++q) {
    if (cfg.init[q] == '1') c.x(q);
  }
  c.append(logical);
  if (!measured) {
    const auto first = c.add_clbits(n);
    for (std::size_t q = 0; q < n; ++q) c.measure(q, first + q);
    auto full = exact_distribution(c, NoiseModel::noiseless());
    OutcomeDistribution out{n, {}};
    for (const auto& [key, p] : full.probs) out.probs[key.substr(first)] += p;
    out.prune(1e-15);
    return out;
  }
  auto out = exact_distribution(c, NoiseModel::noiseless());
  out.prune(1e-15);
  return out;
}

PointResult run_point(const ExperimentConfig& cfg, const CodeSpec& code) {
  const auto start = std::chrono::steady_clock::now();
  const auto logical = cfg.load_circuit();
  PointResult out;

  const auto init = cfg.init.empty() ? zeros(logical.num_qubits()) : cfg.init;
  Circuit physical = state_prep(code, init, cfg.layout);
  out.encoded = compile_logical(code, logical, cfg.hmode, cfg.layout);
  physical.widen(out.encoded.physical.num_qubits(), out.encoded.physical.num_clbits());
  physical.append(out.encoded.physical);
  out.encoded.physical = std::move(physical);

  if (has_measurement(logical)) {
    if (cfg.strategy != Strategy::DM) {
      throw ConfigError("config: circuits with their own measurements support the dm strategy only");
    }
    out.measured = {out.encoded.physical, readout_from_measurements(out.encoded)};
  } else {
    out.measured = with_strategy_tail(out.encoded, cfg.strategy, {cfg.noiseless_tail});
  }

  auto& rec = out.record;
  rec.d = code.distance();
  rec.code = code.name();
  rec.strategy = std::string(to_string(cfg.strategy));
  rec.policy = cfg.policy.name();
  rec.backend = std::string(to_string(cfg.backend));
  rec.seed = cfg.seed;
  rec.label = cfg.label;

  if (cfg.backend == Backend::Exact) {
    out.exact = exact_distribution(out.measured.circuit, cfg.noise, out.encoded.ancillas.gadget_clbits);
    out.mitigation = mitigate(out.exact, out.measured.readout, cfg.policy);
    rec.shots = 0;
  } else {
    out.histogram = run_trajectories(out.measured.circuit, cfg.noise, cfg.shots, cfg.seed,
                                     {cfg.threads, cfg.engine});
    out.mitigation = mitigate(out.histogram, out.measured.readout, cfg.policy);
    rec.shots = cfg.shots;
  }
  out.ideal = ideal_distribution(cfg);
  rec.accepted = out.mitigation.accepted;
  rec.post_rate = out.mitigation.post_rate();
  rec.sso = out.mitigation.accepted > 0.0 ? sso(out.mitigation.logical_distribution(), out.ideal) : 0.0;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RunRecord> records;
  for (const auto& code : cfg.codes()) records.push_back(run_point(cfg, code).record);
  return records;
}

namespace {

std::string cx_cascade(std::size_t qubits, std::size_t count) {
  std::ostringstream out;
  out << "qubits " << qubits;
  for (std::size_t k = 0; k < count; ++k) {
    const auto a = qubits == 2 ? 0 : k % (qubits - 1);
    out << "\ncx " << a << ' ' << a + 1;
  }
  return out.str();
}

std::string grover(std::size_t iterations) {
  std::string s = "qubits 2\nh 0\nh 1";
  for (std::size_t k = 0; k < iterations; ++k) {
    s += "\ncz 0 1\nh 0\nh 1\nx 0\nx 1\ncz 0 1\nx 0\nx 1\nh 0\nh 1";
  }
  return s;
}

NoiseModel rates(double p1, double p2) {
  NoiseModel m;
  m.p1 = p1;
  m.p2 = p2;
  m.convention = NoiseConvention::Mixing;
  return m;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (auto d = lo; d <= hi; ++d) v.push_back(d);
  return v;
}

}  // namespace

std::vector<std::string> repro_scenarios() { return {"fig4", "fig5", "fig7a", "fig7b", "hdw11", "hdw35"}; }

std::vector<ReproGroup> repro_configs(std::string_view scenario, std::uint64_t shots, std::size_t threads) {
  ExperimentConfig base;
  base.threads = threads;
  if (shots) base.shots = shots;
  std::vector<ReproGroup> groups;

  if (scenario == "fig4") {
    ReproGroup g{"fig4", {}};
    for (auto s : {Strategy::DM, Strategy::DSM, Strategy::SS}) {
      auto cfg = base;
      cfg.circuit = cx_cascade(3, 21);
      cfg.init = "111";
      cfg.sweep = {1, 2, 3};
      cfg.noise = rates(0.001, 0.01);
      cfg.strategy = s;
      cfg.seed = 4;
      cfg.label = "fig4";
      g.configs.push_back(cfg);
    }
    groups.push_back(std::move(g));
  } else if (scenario == "fig5") {
    for (std::size_t it = 1; it <= 3; ++it) {
      auto cfg = base;
      cfg.circuit = grover(it);
      cfg.code = "steane";
      cfg.noise = rates(3e-7, 2e-5);
      cfg.seed = 5;
      cfg.label = "grover iterations " + std::to_string(it);
      groups.push_back({"fig5_iter" + std::to_string(it), {cfg}});
    }
  } else if (scenario == "fig7a" || scenario == "fig7b") {
    auto cfg = base;
    const bool h = scenario == "fig7a";
    std::string text = "qubits 1";
    for (int k = 0; k < (h ? 6 : 3); ++k) text += h ? "\nh 0" : "\ns 0\nsdg 0";
    cfg.circuit = text;
    cfg.hmode = HadamardMode::NonFT;
    cfg.sweep = range(1, 5);
    cfg.noise = rates(0.001, 0.01);
    cfg.backend = Backend::Exact;
    cfg.label = std::string(scenario);
    groups.push_back({std::string(scenario), {cfg}});
  } else if (scenario == "hdw11" || scenario == "hdw35") {
    const std::size_t count = scenario == "hdw11" ? 11 : 35;
    for (const char* init : {"00", "11"}) {
      ReproGroup g{std::string(scenario) + "_" + init, {}};
      for (const auto& policy : {DecodePolicy::post_select(), DecodePolicy::correct(),
                                 DecodePolicy::correct(DecodePolicy::Band::OneSigma)}) {
        auto cfg = base;
        cfg.circuit = cx_cascade(2, count);
        cfg.init = init;
        cfg.noise = rates(0.001, 0.01);
        cfg.policy = policy;
        cfg.sweep = policy.kind == DecodePolicy::Kind::PostSelect ? range(1, 5) : range(2, 5);
        cfg.seed = count;
        cfg.label = "simulated analog";
        g.configs.push_back(cfg);
      }
      groups.push_back(std::move(g));
    }
  } else {
    throw ConfigError("unknown scenario '" + std::string(scenario) + "'");
  }
  return groups;
}

std::vector<ReproOutput> repro(std::string_view scenario, std::uint64_t shots, std::size_t threads) {
  std::vector<ReproOutput> out;
  for (const auto& group : repro_configs(scenario, shots, threads)) {
    ReproOutput o{group.name, {}};
    for (const auto& cfg : group.configs) {
      auto recs = run_experiment(cfg);
      o.records.insert(o.records.end(), recs.begin(), recs.end());
    }
    std::stable_sort(o.records.begin(), o.records.end(), [](const RunRecord& a, const RunRecord& b) {
      return std::tie(a.d, a.strategy, a.policy) < std::tie(b.d, b.strategy, b.policy);
    });
    out.push_back(std::move(o));
  }
  return out;
}

std::string csv_header() { return "d,strategy,policy,backend,shots,accepted,post_rate,sso,seed,wall_ms"; }

void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << csv_header() << '\n';
  for (const auto& r : records) {
    out << r.d << ',' << r.strategy << ',' << r.policy << ',' << r.backend << ',' << r.shots << ','
        << format_double(r.accepted) << ',' << format_double(r.post_rate) << ','
        << format_double(r.sso) << ',' << r.seed << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_json(const std::vector<RunRecord>& records, std::ostream& out) {
  out << nlohmann::json(records).dump(2) << '\n';
}

void emit(const std::vector<RunRecord>& records, std::string_view format, const std::string& path) {
  if (records.empty()) throw Error("emit: no records");
  if (format != "csv" && format != "json") throw ConfigError("emit: format must be csv or json");
  std::ofstream out(path);
  if (!out) throw Error("emit: cannot write '" + path + "'");
  if (format == "csv") write_csv(records, out);
  else write_json(records, out);
  if (!out) throw Error("emit: write to '" + path + "' failed");
}

}  // namespace ftqem
