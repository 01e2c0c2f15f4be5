#include "gsqg/config.hpp"

#include <charconv>
#include <sstream>

#include "gsqg/errors.hpp"

namespace gsqg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& constraint) {
  fail(Errc::ValidationError, key + ": " + constraint);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) bad_value(key, "not a number");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad_value(key, "not a number");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) bad_value(key, "not an integer");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad_value(key, "not an integer");
  }
}

std::vector<std::string> split_csv(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        fail(Errc::ParseError, "line " + std::to_string(lineno) + ": unterminated section");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(Errc::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      fail(Errc::ParseError, "line " + std::to_string(lineno) + ": empty key");
    const std::string qual = section.empty() ? key : section + "." + key;

    if (qual == "domain.n") {
      cfg.n = static_cast<int>(parse_int(qual, value));
    } else if (qual == "domain.length") {
      cfg.length = parse_double(qual, value);
    } else if (qual == "physics.beta") {
      cfg.beta = parse_double(qual, value);
    } else if (qual == "physics.s") {
      cfg.s = parse_double(qual, value);
    } else if (qual == "physics.alpha") {
      cfg.alpha = parse_double(qual, value);
    } else if (qual == "solver.cfl") {
      cfg.cfl = parse_double(qual, value);
    } else if (qual == "solver.T") {
      cfg.T = parse_double(qual, value);
    } else if (qual == "solver.outputs") {
      cfg.outputs.clear();
      for (const auto& item : split_csv(value)) cfg.outputs.push_back(parse_double(qual, item));
    } else if (qual == "solver.formulation") {
      if (value == "transport")
        cfg.formulation = Formulation::Transport;
      else if (value == "velocity")
        cfg.formulation = Formulation::Velocity;
      else
        bad_value(qual, "must be transport or velocity");
    } else if (qual == "experiment.kind") {
      cfg.kind = value;
    } else if (qual == "experiment.initial") {
      cfg.initial = value;
    } else if (qual == "experiment.max_mode") {
      cfg.max_mode = static_cast<int>(parse_int(qual, value));
    } else if (qual == "experiment.amplitude") {
      cfg.amplitude = parse_double(qual, value);
    } else if (qual == "experiment.R") {
      cfg.R = parse_double(qual, value);
    } else if (qual == "experiment.n_list") {
      cfg.n_list.clear();
      for (const auto& item : split_csv(value))
        cfg.n_list.push_back(static_cast<int>(parse_int(qual, item)));
    } else if (qual == "experiment.target_displacement") {
      cfg.target_displacement = parse_double(qual, value);
    } else if (qual == "experiment.base_amplitude") {
      cfg.base_amplitude = parse_double(qual, value);
    } else if (qual == "experiment.cutoff_radius") {
      cfg.cutoff_radius = parse_double(qual, value);
    } else if (qual == "experiment.h0") {
      cfg.h0 = parse_double(qual, value);
    } else if (qual == "experiment.T0") {
      cfg.T0 = parse_double(qual, value);
    } else if (qual == "experiment.n_boosts") {
      cfg.n_boosts = static_cast<int>(parse_int(qual, value));
    } else if (qual == "output.dir") {
      cfg.out_dir = value;
    } else if (qual == "output.seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(qual, value));
    } else {
      bad_value(qual, "unknown key");
    }
  }

  // Cross-field validation mirrors the owning modules' preconditions.
  if (cfg.n < 16 || cfg.n % 2 != 0) bad_value("domain.n", "must be even and >= 16");
  if (!(cfg.length > 0.0)) bad_value("domain.length", "must be positive");
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) bad_value("physics.beta", "must be in [0,1]");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) bad_value("alpha", "must be in (0,1)");
  if (!(cfg.cfl > 0.0)) bad_value("solver.cfl", "must be positive");
  if (!(cfg.T > 0.0)) bad_value("solver.T", "must be positive");
  if (cfg.kind != "simulate" && cfg.kind != "nonuniform" && cfg.kind != "holder" &&
      cfg.kind != "dichotomy" && cfg.kind != "inequalities")
    bad_value("experiment.kind",
              "must be one of simulate|nonuniform|holder|dichotomy|inequalities");
  if ((cfg.kind == "nonuniform" || cfg.kind == "dichotomy") && !(cfg.s > 2.0))
    bad_value("physics.s", "must be > 2 for this experiment");
  if (cfg.initial != "taylor_green" && cfg.initial != "random_smooth" && cfg.initial != "bump")
    bad_value("experiment.initial", "must be taylor_green|random_smooth|bump");
  for (int n : cfg.n_list)
    if (n < 1) bad_value("experiment.n_list", "entries must be positive");
  if (!(cfg.R > 0.0)) bad_value("experiment.R", "must be positive");
  if (cfg.outputs.empty()) cfg.outputs.push_back(cfg.T);
  return cfg;
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "[domain]\n";
  out << "n = " << cfg.n << "\n";
  out << "length = " << cfg.length << "\n";
  out << "[physics]\n";
  out << "beta = " << cfg.beta << "\n";
  out << "s = " << cfg.s << "\n";
  out << "alpha = " << cfg.alpha << "\n";
  out << "[solver]\n";
  out << "cfl = " << cfg.cfl << "\n";
  out << "T = " << cfg.T << "\n";
  out << "outputs = ";
  for (std::size_t i = 0; i < cfg.outputs.size(); ++i)
    out << (i ? ", " : "") << cfg.outputs[i];
  out << "\n";
  out << "formulation = "
      << (cfg.formulation == Formulation::Transport ? "transport" : "velocity") << "\n";
  out << "[experiment]\n";
  out << "kind = " << cfg.kind << "\n";
  out << "initial = " << cfg.initial << "\n";
  out << "max_mode = " << cfg.max_mode << "\n";
  out << "amplitude = " << cfg.amplitude << "\n";
  out << "R = " << cfg.R << "\n";
  out << "n_list = ";
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) out << (i ? ", " : "") << cfg.n_list[i];
  out << "\n";
  out << "target_displacement = " << cfg.target_displacement << "\n";
  out << "base_amplitude = " << cfg.base_amplitude << "\n";
  out << "cutoff_radius = " << cfg.cutoff_radius << "\n";
  out << "h0 = " << cfg.h0 << "\n";
  out << "T0 = " << cfg.T0 << "\n";
  out << "n_boosts = " << cfg.n_boosts << "\n";
  out << "[output]\n";
  out << "dir = " << cfg.out_dir << "\n";
  out << "seed = " << cfg.seed << "\n";
  return out.str();
}

}  // namespace gsqg
