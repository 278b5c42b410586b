#include "iosnoma/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "iosnoma/errors.hpp"

namespace iosnoma {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig::RunConfig() {
  for (int i = 0; i <= 24; ++i) snr1_db.push_back(5.0 * i);
}

void RunConfig::validate() const {
  const auto wrap = [](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ConfigError(field, e.what());
    }
  };
  wrap("surface", [&] { scenario.surface.validate(); });
  wrap("feed", [&] { scenario.feed.validate(); });
  wrap("split_surface", [&] { scenario.split_surface.validate(); });
  wrap("user1", [&] { scenario.user1.validate(); });
  wrap("user2", [&] { scenario.user2.validate(); });
  wrap("hardware", [&] { scenario.hq.validate(); });
  wrap("budget", [&] { scenario.budget.validate(); });
  wrap("power_split", [&] { scenario.power_split.validate(); });
  wrap("oma_split", [&] { scenario.oma_split.validate(); });
  wrap("mc", [&] { mc.validate(); });
  wrap("optimizer", [&] { optimizer.validate(); });

  if (n_elements.empty()) throw ConfigError("rate_vs_n.n_elements", "must not be empty");
  for (std::size_t i = 0; i < n_elements.size(); ++i) {
    if (n_elements[i] < 1) throw ConfigError("rate_vs_n.n_elements", "element counts must be >= 1");
    if (i > 0 && n_elements[i] <= n_elements[i - 1]) {
      throw ConfigError("rate_vs_n.n_elements", "values must be strictly increasing");
    }
  }
  if (snr1_db.empty()) throw ConfigError("rgm_vs_power.snr1_db", "must not be empty");
  for (std::size_t i = 0; i < snr1_db.size(); ++i) {
    if (!std::isfinite(snr1_db[i])) throw ConfigError("rgm_vs_power.snr1_db", "values must be finite");
    if (i > 0 && snr1_db[i] <= snr1_db[i - 1]) {
      throw ConfigError("rgm_vs_power.snr1_db", "values must be strictly increasing");
    }
  }
  if (eps_panels.empty()) throw ConfigError("rgm_vs_power.eps_panels", "must not be empty");
  for (double e : eps_panels) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("rgm_vs_power.eps_panels", "quality factors must lie in [0, 1]");
  }
}

namespace {

// One JSON object with its dotted path. Keys starting with '_' are comments;
// any other key that is never read is an error.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::optional<Section> child(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    return Section(j_.at(key), sub(key));
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return read_number(key);
  }

  // Power-like quantity given either linearly or as key + "_db".
  double power(const std::string& key, double fallback) {
    const std::string key_db = key + "_db";
    if (has(key) && has(key_db)) throw ConfigError(sub(key), "give either " + key + " or " + key_db + ", not both");
    if (has(key_db)) return db_to_linear(read_number(key_db));
    if (has(key)) return read_number(key);
    return fallback;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    used_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(sub(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    used_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(sub(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(sub(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(sub(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!key.empty() && key[0] == '_') continue;
      if (!used_.count(key)) throw ConfigError(sub(key), "unknown key");
    }
  }

  template <class F>
  void guard(const std::string& key, F&& f) {
    try {
      f();
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ConfigError(sub(key), e.what());
    }
  }

 private:
  double read_number(const std::string& key) {
    used_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(sub(key), "expected a number");
    return v.get<double>();
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

Side parse_side(const std::string& s, const std::string& path) {
  if (s == "reflect") return Side::reflect;
  if (s == "refract") return Side::refract;
  throw ConfigError(path, "side must be reflect or refract");
}

UserLinkParams read_user(Section& sec, UserLinkParams u) {
  u.m = sec.number("m", u.m);
  u.rho_large = sec.power("rho_large", u.rho_large);
  u.side = parse_side(sec.text("side", std::string(to_string(u.side))), sec.sub("side"));
  return u;
}

PowerSplit read_split(Section& sec, PowerSplit p) {
  const bool has1 = sec.has("kappa1"), has2 = sec.has("kappa2");
  p.kappa1 = sec.number("kappa1", p.kappa1);
  p.kappa2 = sec.number("kappa2", has1 && !has2 ? 1.0 - p.kappa1 : p.kappa2);
  if (has2 && !has1) p.kappa1 = 1.0 - p.kappa2;
  return p;
}

json split_json(const PowerSplit& p) { return {{"kappa1", p.kappa1}, {"kappa2", p.kappa2}}; }

json user_json(const UserLinkParams& u) {
  return {{"m", u.m}, {"rho_large", u.rho_large}, {"side", std::string(to_string(u.side))}};
}

json to_json(const RunConfig& c) {
  const Scenario& s = c.scenario;
  json j;
  j["surface"] = {{"n_x", s.surface.n_x},
                  {"n_y", s.surface.n_y},
                  {"delta_x", s.surface.delta_x},
                  {"delta_y", s.surface.delta_y},
                  {"wavelength", s.surface.wavelength}};
  j["feed"] = {{"d0", s.feed.d0}, {"alpha", s.feed.alpha}};
  j["split_surface"] = {{"beta1", s.split_surface.beta1}, {"beta2", s.split_surface.beta2}};
  j["user1"] = user_json(s.user1);
  j["user2"] = user_json(s.user2);
  j["hardware"] = {{"eps_v", s.hq.eps_v}, {"eps_u1", s.hq.eps_u1}, {"eps_u2", s.hq.eps_u2}};
  j["budget"] = {{"rho", s.budget.rho}, {"sigma2_1", s.budget.sigma2_1}, {"sigma2_2", s.budget.sigma2_2}};
  j["power_split"] = split_json(s.power_split);
  j["oma_split"] = split_json(s.oma_split);
  j["analysis"] = {{"convention", std::string(to_string(c.analysis.convention))},
                   {"a1_variant", std::string(to_string(c.analysis.a1_variant))}};
  j["mc"] = {{"trials", c.mc.trials}, {"seed", c.mc.seed}, {"batch", c.mc.batch}};
  j["optimizer"] = {{"tol_kappa", c.optimizer.tol_kappa},
                    {"kappa_floor", c.optimizer.kappa_floor},
                    {"diff_step", c.optimizer.diff_step},
                    {"objective_source", std::string(to_string(c.optimizer.objective_source))},
                    {"mc_trials", c.optimizer.mc.trials}};
  j["rate_vs_n"] = {{"n_elements", c.n_elements}};
  j["rgm_vs_power"] = {{"snr1_db", c.snr1_db}, {"eps_panels", c.eps_panels}};
  return j;
}

RunConfig from_json(const json& doc) {
  RunConfig c;
  Scenario& s = c.scenario;
  Section root(doc, "");

  if (auto sec = root.child("surface")) {
    s.surface.n_x = static_cast<int>(std::min<std::uint64_t>(sec->count("n_x", s.surface.n_x), 1u << 20));
    s.surface.n_y = static_cast<int>(std::min<std::uint64_t>(sec->count("n_y", s.surface.n_y), 1u << 20));
    s.surface.delta_x = sec->number("delta_x", s.surface.delta_x);
    s.surface.delta_y = sec->number("delta_y", s.surface.delta_y);
    s.surface.wavelength = sec->number("wavelength", s.surface.wavelength);
    sec->finish();
  }
  if (auto sec = root.child("feed")) {
    s.feed.d0 = sec->number("d0", s.feed.d0);
    s.feed.alpha = sec->number("alpha", s.feed.alpha);
    sec->finish();
  }
  if (auto sec = root.child("split_surface")) {
    // Amplitudes (beta1, beta2) or powers (beta1_sq, beta2_sq), not mixed.
    const bool amp = sec->has("beta1") || sec->has("beta2");
    const bool pw = sec->has("beta1_sq") || sec->has("beta2_sq");
    if (amp && pw) throw ConfigError("split_surface", "give beta1/beta2 or beta1_sq/beta2_sq, not both");
    double b1 = s.split_surface.beta1, b2 = s.split_surface.beta2;
    if (pw) {
      const double p1 = sec->number("beta1_sq", b1 * b1), p2 = sec->number("beta2_sq", b2 * b2);
      if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw ConfigError("split_surface", "beta1_sq and beta2_sq must be >= 0");
      b1 = std::sqrt(p1);
      b2 = std::sqrt(p2);
    } else {
      b1 = sec->number("beta1", b1);
      b2 = sec->number("beta2", b2);
      if (!(b1 >= 0.0) || !(b2 >= 0.0)) throw ConfigError("split_surface", "beta1 and beta2 must be >= 0");
    }
    if (std::abs(b1 * b1 + b2 * b2 - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "beta1_sq + beta2_sq must equal 1 (got " << b1 * b1 + b2 * b2 << ")";
      throw ConfigError("split_surface", os.str());
    }
    s.split_surface = SurfaceSplit{b1, b2};
    sec->finish();
  }
  if (auto sec = root.child("user1")) {
    s.user1 = read_user(*sec, s.user1);
    sec->finish();
  }
  if (auto sec = root.child("user2")) {
    s.user2 = read_user(*sec, s.user2);
    sec->finish();
  }
  if (auto sec = root.child("hardware")) {
    // "eps" sets all three factors at once.
    const double all = sec->number("eps", NAN);
    if (!std::isnan(all)) s.hq = HardwareQuality{all, all, all};
    s.hq.eps_v = sec->number("eps_v", s.hq.eps_v);
    s.hq.eps_u1 = sec->number("eps_u1", s.hq.eps_u1);
    s.hq.eps_u2 = sec->number("eps_u2", s.hq.eps_u2);
    sec->finish();
  }
  if (auto sec = root.child("budget")) {
    s.budget.rho = sec->power("rho", s.budget.rho);
    s.budget.sigma2_1 = sec->power("sigma2_1", s.budget.sigma2_1);
    s.budget.sigma2_2 = sec->power("sigma2_2", s.budget.sigma2_2);
    sec->finish();
  }
  if (auto sec = root.child("power_split")) {
    s.power_split = read_split(*sec, s.power_split);
    sec->finish();
  }
  if (auto sec = root.child("oma_split")) {
    s.oma_split = read_split(*sec, s.oma_split);
    sec->finish();
  }
  if (auto sec = root.child("analysis")) {
    sec->guard("convention", [&] {
      c.analysis.convention =
          parse_convention(sec->text("convention", std::string(to_string(c.analysis.convention))));
    });
    sec->guard("a1_variant", [&] {
      c.analysis.a1_variant =
          parse_a1_variant(sec->text("a1_variant", std::string(to_string(c.analysis.a1_variant))));
    });
    sec->finish();
  }
  if (auto sec = root.child("mc")) {
    c.mc.trials = sec->count("trials", c.mc.trials);
    c.mc.seed = sec->count("seed", c.mc.seed);
    c.mc.batch = sec->count("batch", c.mc.batch);
    sec->finish();
  }
  if (auto sec = root.child("optimizer")) {
    c.optimizer.tol_kappa = sec->number("tol_kappa", c.optimizer.tol_kappa);
    c.optimizer.kappa_floor = sec->number("kappa_floor", c.optimizer.kappa_floor);
    c.optimizer.diff_step = sec->number("diff_step", c.optimizer.diff_step);
    sec->guard("objective_source", [&] {
      c.optimizer.objective_source = parse_objective_source(
          sec->text("objective_source", std::string(to_string(c.optimizer.objective_source))));
    });
    c.optimizer.mc.trials = sec->count("mc_trials", c.optimizer.mc.trials);
    sec->finish();
  }
  if (auto sec = root.child("rate_vs_n")) {
    if (auto v = sec->numbers("n_elements")) {
      c.n_elements.clear();
      for (double x : *v) {
        if (x != std::floor(x) || x < 1 || x > 1e8) throw ConfigError("rate_vs_n.n_elements", "expected positive integers");
        c.n_elements.push_back(static_cast<int>(x));
      }
    }
    sec->finish();
  }
  if (auto sec = root.child("rgm_vs_power")) {
    if (auto v = sec->numbers("snr1_db")) c.snr1_db = *v;
    if (auto v = sec->numbers("eps_panels")) c.eps_panels = *v;
    sec->finish();
  }
  root.finish();
  c.validate();
  return c;
}

std::string embedded_config(std::string_view text) {
  constexpr std::string_view tag = "# config: ";
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (line.substr(0, tag.size()) == tag) return std::string(line.substr(tag.size()));
    if (line.empty() || line[0] != '#') break;
    pos = eol + 1;
  }
  throw ConfigError("", "CSV input has no embedded '# config:' line");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::string body;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '#') {
    body = embedded_config(text.substr(first));
  } else {
    body = std::string(text);
  }
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file " + path);
  return parse_config(os.str());
}

std::string canonical_json(const RunConfig& cfg) { return to_json(cfg).dump(); }

std::string pretty_json(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::uint64_t scenario_digest(const RunConfig& cfg) { return fnv1a64(canonical_json(cfg)); }

}  // namespace iosnoma
