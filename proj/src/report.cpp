#include "hhverify/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "hhverify/error.hpp"

namespace hhv {

std::string format_g17(double v) {
  if (!std::isfinite(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

Json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json box_to_json(const SamplerBox& box) {
  Json j = {{"hi", box.hi}, {"lo", box.lo}};
  j["a_max"] = number_or_null(box.a_max);
  return j;
}

Json instance_params(const Instance& in) {
  Json j = Json::object();
  if (in.params.pq) {
    j["p"] = in.params.pq->p();
    j["q"] = in.params.pq->q();
    j["mode"] = in.params.pq->mode() == ExponentMode::Conjugate ? "conjugate" : "independent";
  } else if (in.params.q) {
    j["q"] = *in.params.q;
  }
  if (in.params.cap) j["M"] = in.params.cap->M;
  return j;
}

}  // namespace

Json config_to_json(const TrialConfig& c) {
  Json suites = Json::array();
  for (SuiteId id : c.suites) suites.push_back(std::string(to_string(id)));
  Json pinned = Json::array();
  for (const auto& pin : c.pinned) {
    Json p = {{"suite", std::string(to_string(pin.suite))},
              {"function", pin.instance.spec.to_string()},
              {"a", pin.instance.iv.a()},
              {"b", pin.instance.iv.b()},
              {"params", instance_params(pin.instance)}};
    pinned.push_back(std::move(p));
  }
  Json j;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["suites"] = std::move(suites);
  j["box"] = c.box ? box_to_json(*c.box) : Json(nullptr);
  j["p_grid"] = c.p_grid;
  j["q_grid"] = c.q_grid;
  j["weights"] = {{"exp", c.weights.exp}, {"poly", c.weights.poly}, {"power", c.weights.power}};
  j["sign"] = std::string(to_string(c.sign));
  j["allow_negative_a"] = c.allow_negative_a;
  j["shrink_steps"] = c.shrink_steps;
  j["pinned"] = std::move(pinned);
  return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

double get_number(const Json& j, const char* key) {
  if (!j.is_number()) bad(std::string("config key '") + key + "' must be a number");
  return j.get<double>();
}

std::vector<double> get_grid(const Json& j, const char* key) {
  if (!j.is_array()) bad(std::string("config key '") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

}  // namespace

TrialConfig config_from_json(const Json& doc, TrialConfig c) {
  if (!doc.is_object()) bad("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned()) bad("config key 'seed' must be a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "trials") {
      if (!v.is_number_integer()) bad("config key 'trials' must be an integer");
      c.trials = v.get<int>();
    } else if (key == "suites") {
      if (!v.is_array()) bad("config key 'suites' must be an array");
      c.suites.clear();
      for (const auto& s : v) {
        if (!s.is_string()) bad("suite names must be strings");
        const auto name = s.get<std::string>();
        if (name == "all") {
          c.suites = all_suites();
          continue;
        }
        auto id = parse_suite_id(name);
        if (!id) bad("unknown suite '" + name + "'");
        c.suites.push_back(*id);
      }
    } else if (key == "box") {
      if (v.is_null()) {
        c.box.reset();
        continue;
      }
      if (!v.is_object()) bad("config key 'box' must be an object or null");
      SamplerBox box;
      for (const auto& [bk, bv] : v.items()) {
        if (bk == "lo") box.lo = get_number(bv, "box.lo");
        else if (bk == "hi") box.hi = get_number(bv, "box.hi");
        else if (bk == "a_max") {
          if (!bv.is_null()) box.a_max = get_number(bv, "box.a_max");
        } else bad("unknown key 'box." + bk + "'");
      }
      c.box = box;
    } else if (key == "p_grid") {
      c.p_grid = get_grid(v, "p_grid");
    } else if (key == "q_grid") {
      c.q_grid = get_grid(v, "q_grid");
    } else if (key == "weights") {
      if (!v.is_object()) bad("config key 'weights' must be an object");
      for (const auto& [wk, wv] : v.items()) {
        if (wk == "power") c.weights.power = get_number(wv, "weights.power");
        else if (wk == "exp") c.weights.exp = get_number(wv, "weights.exp");
        else if (wk == "poly") c.weights.poly = get_number(wv, "weights.poly");
        else bad("unknown key 'weights." + wk + "'");
      }
    } else if (key == "sign") {
      const auto s = v.is_string() ? v.get<std::string>() : std::string();
      if (s == "plus") c.sign = SignConvention::PlusDerived;
      else if (s == "minus") c.sign = SignConvention::MinusAsPrinted;
      else bad("config key 'sign' must be \"plus\" or \"minus\"");
    } else if (key == "allow_negative_a") {
      if (!v.is_boolean()) bad("config key 'allow_negative_a' must be a boolean");
      c.allow_negative_a = v.get<bool>();
    } else if (key == "shrink_steps") {
      if (!v.is_number_integer()) bad("config key 'shrink_steps' must be an integer");
      c.shrink_steps = v.get<int>();
    } else if (key == "pinned") {
      // Echo only: the CLI re-pins its witnesses from `sign` on every run.
      if (!v.is_array()) bad("config key 'pinned' must be an array");
    } else {
      bad("unknown config key '" + key + "'");
    }
  }
  return c;
}

Json trial_to_json(const TrialRecord& r) {
  Json j;
  j["index"] = r.index;
  j["pinned"] = r.pinned;
  j["function"] = r.function;
  j["a"] = r.a;
  j["b"] = r.b;
  j["p"] = number_or_null(r.p);
  j["q"] = number_or_null(r.q);
  j["M"] = number_or_null(r.M);
  j["n"] = r.n ? Json(*r.n) : Json(nullptr);
  j["lhs"] = number_or_null(r.lhs);
  j["rhs"] = number_or_null(r.rhs);
  j["margin"] = number_or_null(r.margin);
  j["hypotheses_ok"] = r.hypotheses_ok;
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses) {
    hyps.push_back({{"advisory", h.advisory}, {"name", h.name}, {"passed", h.passed}});
  }
  j["hypotheses"] = std::move(hyps);
  j["sign"] = r.sign ? Json(std::string(to_string(*r.sign))) : Json(nullptr);
  j["status"] = std::string(to_string(r.status));
  if (!r.error.empty()) j["error"] = r.error;
  Json extras = Json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number_or_null(v);
  j["extras"] = std::move(extras);
  if (r.confirmation) {
    j["high_precision"] = {{"lhs", r.confirmation->lhs},
                           {"rhs", r.confirmation->rhs},
                           {"margin", number_or_null(r.confirmation->margin)},
                           {"violated", r.confirmation->violated}};
  }
  return j;
}

Json batch_to_json(const TrialBatch& batch, const ReportOptions& options) {
  Json suites = Json::array();
  for (const auto& sb : batch.suites) {
    const auto& s = sb.summary;
    Json summary = {
        {"generated", s.generated},
        {"passed", s.passed},
        {"failed", s.failed},
        {"filtered", s.filtered},
        {"errors", s.errors},
        {"confirmed_violations", s.confirmed_violations},
        {"outcome", std::string(to_string(s.outcome))},
    };
    summary["min_margin"] = number_or_null(s.min_margin);
    summary["worst_trial"] = s.worst_trial ? Json(*s.worst_trial) : Json(nullptr);
    summary["filtered_rate"] =
        s.generated ? static_cast<double>(s.filtered) / static_cast<double>(s.generated) : 0.0;
    Json suite = {{"suite", std::string(to_string(sb.suite))},
                  {"asserted", sb.asserted},
                  {"slack", sb.slack},
                  {"summary", std::move(summary)}};
    if (options.per_trial) {
      Json trials = Json::array();
      for (const auto& t : sb.trials) trials.push_back(trial_to_json(t));
      suite["trials"] = std::move(trials);
    }
    suites.push_back(std::move(suite));
  }
  Json findings = Json::array();
  for (const auto& f : batch.findings) {
    Json fj = {{"suite", f.suite}, {"kind", f.kind}, {"message", f.message}, {"count", f.count}};
    fj["witness"] = f.witness ? trial_to_json(*f.witness) : Json(nullptr);
    fj["minimized"] = f.minimized ? trial_to_json(*f.minimized) : Json(nullptr);
    findings.push_back(std::move(fj));
  }
  Json doc = {{"version", kToolVersion},
              {"config", config_to_json(batch.config)},
              {"suites", std::move(suites)},
              {"findings", std::move(findings)}};
  if (options.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    doc["timestamp"] = buf;
    doc["wall_seconds"] = batch.wall_seconds;
  }
  return doc;
}

Json bound_report_to_json(const BoundReport& r) {
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses.checks) {
    hyps.push_back({{"advisory", h.advisory}, {"name", h.name}, {"passed", h.passed}});
  }
  Json j = {{"theorem", std::string(to_string(r.theorem))},
            {"function", r.function},
            {"a", r.a},
            {"b", r.b},
            {"hypotheses", std::move(hyps)},
            {"hypotheses_ok", r.hypotheses.overall}};
  j["lhs_abs"] = number_or_null(r.lhs_abs);
  j["rhs"] = number_or_null(r.rhs);
  j["margin"] = number_or_null(r.margin);
  j["p"] = number_or_null(r.p);
  j["q"] = number_or_null(r.q);
  j["M"] = number_or_null(r.M);
  j["sign"] = r.sign ? Json(std::string(to_string(*r.sign))) : Json(nullptr);
  j["a_nonnegative"] =
      r.hypotheses.a_nonnegative ? Json(*r.hypotheses.a_nonnegative) : Json(nullptr);
  return j;
}

namespace {

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_g17(d) : "null";
      return;
    }
    default: out += v.dump(); return;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_g17(const std::optional<double>& v) { return v ? format_g17(*v) : std::string(); }

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += '\n';
  return out;
}

std::string batch_to_csv(const TrialBatch& batch) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& sb : batch.suites) {
    for (const auto& t : sb.trials) {
      std::string family;
      std::string params;
      if (t.instance && t.instance->phi) {
        family = "jensen";
        params = t.function;
      } else if (t.instance) {
        family = t.instance->spec.family_name();
        params = t.instance->spec.params_string();
      }
      os << to_string(sb.suite) << ',' << t.index << ',' << csv_field(family) << ','
         << csv_field(params) << ',' << format_g17(t.a) << ',' << format_g17(t.b) << ','
         << opt_g17(t.p) << ',' << opt_g17(t.q) << ',' << format_g17(t.lhs) << ','
         << format_g17(t.rhs) << ',' << format_g17(t.margin) << ','
         << (t.hypotheses_ok ? "true" : "false") << ','
         << (t.sign ? std::string(to_string(*t.sign)) : std::string()) << ','
         << to_string(t.status) << '\n';
    }
  }
  return os.str();
}

std::string bound_report_to_csv(const BoundReport& r, const FunctionSpec& spec) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  const double margin = r.margin;
  const bool hyp = r.hypotheses.overall;
  const char* status = !hyp ? "filtered" : (margin >= -1e-9 ? "pass" : "fail");
  os << to_string(r.theorem) << ",0," << csv_field(spec.family_name()) << ','
     << csv_field(spec.params_string()) << ',' << format_g17(r.a) << ',' << format_g17(r.b) << ','
     << opt_g17(r.p) << ',' << opt_g17(r.q) << ',' << format_g17(r.lhs_abs) << ','
     << format_g17(r.rhs) << ',' << format_g17(margin) << ',' << (hyp ? "true" : "false") << ','
     << (r.sign ? std::string(to_string(*r.sign)) : std::string()) << ',' << status << '\n';
  return os.str();
}

}  // namespace hhv
