#include "nonstoch/json_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

using nlohmann::json;

json value_to_json(const Value& v) {
  if (v.is_int()) return json(v.int_value());
  if (v.is_rational()) return json(to_string(v.rational_value()));
  if (v.is_symbol()) {
    const std::string& s = v.symbol();
    if (s.find('/') != std::string::npos) {
      bool looks_rational = true;
      try {
        parse_rational(s);
      } catch (const InvalidArgument&) {
        looks_rational = false;
      }
      if (looks_rational)
        throw InvalidArgument("symbol '" + s +
                              "' matches the rational pattern and would not "
                              "round-trip");
    }
    return json(s);
  }
  json arr = json::array();
  for (const Value& item : v.tuple()) arr.push_back(value_to_json(item));
  return arr;
}

Value value_from_json(const json& j) {
  if (j.is_number_integer()) return Value(j.get<long long>());
  if (j.is_number())
    throw InvalidArgument("values must be exact: integers, \"p/q\" strings, "
                          "symbols, or tuples");
  if (j.is_string()) {
    const auto& s = j.get<std::string>();
    if (s.find('/') != std::string::npos) {
      try {
        return Value(parse_rational(s));
      } catch (const InvalidArgument&) {
        // fall through to symbol
      }
    }
    return Value(s);
  }
  if (j.is_array()) {
    Value::Tuple items;
    items.reserve(j.size());
    for (const auto& item : j) items.push_back(value_from_json(item));
    return Value(std::move(items));
  }
  throw InvalidArgument("unsupported JSON value: " + j.dump());
}

json parsed(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("malformed JSON");
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidArgument("expected an integer or \"p/q\" string, got " +
                        j.dump());
}

json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return json(r.numerator());
  return json(to_string(r));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

Ensemble ensemble_from_json(const std::string& text) {
  const json j = parsed(text);
  if (!j.is_object() || !j.contains("variables") || !j.contains("samples"))
    throw InvalidArgument("ensemble file needs 'variables' and 'samples'");
  std::vector<std::string> variables;
  for (const auto& name : j.at("variables")) {
    if (!name.is_string())
      throw InvalidArgument("variable names must be strings");
    variables.push_back(name.get<std::string>());
  }
  std::vector<std::vector<Value>> rows;
  for (const auto& sample : j.at("samples")) {
    if (!sample.is_array())
      throw InvalidArgument("each sample must be an array of values");
    std::vector<Value> row;
    row.reserve(sample.size());
    for (const auto& v : sample) row.push_back(value_from_json(v));
    rows.push_back(std::move(row));
  }
  return Ensemble(std::move(variables), std::move(rows));
}

std::string ensemble_to_json(const Ensemble& e) {
  json j;
  j["variables"] = e.variables();
  json samples = json::array();
  for (std::size_t s = 0; s < e.sample_count(); ++s) {
    json row = json::array();
    for (std::size_t v = 0; v < e.variables().size(); ++v)
      row.push_back(value_to_json(e.at(s, v)));
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

RangeFamily family_from_json(const std::string& text) {
  const json j = parsed(text);
  if (!j.is_object() || !j.contains("ground") || !j.contains("members"))
    throw InvalidArgument("family file needs 'ground' and 'members'");
  const std::string ground = j.at("ground").get<std::string>();
  const bool discrete = ground == "discrete";
  if (!discrete && ground != "interval")
    throw InvalidArgument("ground must be 'discrete' or 'interval'");

  RangeFamily family;
  for (const auto& member : j.at("members")) {
    if (!member.is_object() || !member.contains("label") ||
        !member.contains("set"))
      throw InvalidArgument("each member needs 'label' and 'set'");
    Value label = value_from_json(member.at("label"));
    if (discrete) {
      ValueSet set;
      for (const auto& v : member.at("set")) set.insert(value_from_json(v));
      family.members.push_back({std::move(label), AbstractSet(std::move(set))});
    } else {
      std::vector<Interval> parts;
      for (const auto& pair : member.at("set")) {
        if (!pair.is_array() || pair.size() != 2)
          throw InvalidArgument("interval entries must be [lo, hi] pairs");
        parts.push_back(
            {rational_from_json(pair[0]), rational_from_json(pair[1])});
      }
      family.members.push_back(
          {std::move(label), AbstractSet(IntervalUnion(std::move(parts)))});
    }
  }
  return family;
}

std::string family_to_json(const RangeFamily& family) {
  json j;
  const bool discrete =
      family.members.empty() ||
      std::holds_alternative<ValueSet>(family.members.front().set);
  j["ground"] = discrete ? "discrete" : "interval";
  json members = json::array();
  for (const auto& member : family.members) {
    json m;
    m["label"] = value_to_json(member.label);
    if (const auto* values = std::get_if<ValueSet>(&member.set)) {
      json set = json::array();
      for (const Value& v : *values) set.push_back(value_to_json(v));
      m["set"] = std::move(set);
    } else {
      json set = json::array();
      for (const Interval& p : std::get<IntervalUnion>(member.set).parts())
        set.push_back(json::array({rational_to_json(p.lo),
                                   rational_to_json(p.hi)}));
      m["set"] = std::move(set);
    }
    members.push_back(std::move(m));
  }
  j["members"] = std::move(members);
  return j.dump(2) + "\n";
}

Channel channel_from_json(const std::string& text) {
  const json j = parsed(text);
  if (!j.is_object() || !j.contains("inputs") || !j.contains("outputs") ||
      !j.contains("transition"))
    throw InvalidArgument(
        "channel file needs 'inputs', 'outputs', and 'transition'");
  ValueSet inputs, outputs;
  for (const auto& v : j.at("inputs")) inputs.insert(value_from_json(v));
  for (const auto& v : j.at("outputs")) outputs.insert(value_from_json(v));
  std::map<Value, ValueSet> transition;
  for (const auto& [key, ys] : j.at("transition").items()) {
    ValueSet image;
    for (const auto& y : ys) image.insert(value_from_json(y));
    transition[parse_value_token(key)] = std::move(image);
  }
  return Channel::make(std::move(inputs), std::move(outputs),
                       std::move(transition));
}

std::string channel_to_json(const Channel& channel) {
  json j;
  json inputs = json::array();
  for (const Value& x : channel.inputs()) inputs.push_back(value_to_json(x));
  json outputs = json::array();
  for (const Value& y : channel.outputs()) outputs.push_back(value_to_json(y));
  json transition = json::object();
  for (const auto& [x, ys] : channel.transition_map()) {
    json image = json::array();
    for (const Value& y : ys) image.push_back(value_to_json(y));
    transition[x.str()] = std::move(image);
  }
  j["inputs"] = std::move(inputs);
  j["outputs"] = std::move(outputs);
  j["transition"] = std::move(transition);
  return j.dump(2) + "\n";
}

PlantModel plant_from_json(const std::string& text) {
  const json j = parsed(text);
  if (!j.is_object() || !j.contains("A") || !j.contains("G") ||
      !j.contains("l"))
    throw InvalidArgument("plant file needs 'A', 'G', and 'l'");

  auto matrix_of = [](const json& rows, const char* name) {
    if (!rows.is_array() || rows.empty())
      throw InvalidArgument(std::string(name) + " must be a nonempty matrix");
    const std::size_t cols = rows[0].size();
    Eigen::MatrixXd m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != cols)
        throw InvalidArgument(std::string(name) + " rows have uneven width");
      for (std::size_t k = 0; k < cols; ++k) {
        if (!rows[i][k].is_number())
          throw InvalidArgument(std::string(name) + " entries must be numbers");
        m(i, k) = rows[i][k].get<double>();
      }
    }
    return m;
  };

  Eigen::MatrixXd a = matrix_of(j.at("A"), "A");
  Eigen::MatrixXd g = matrix_of(j.at("G"), "G");

  std::optional<std::vector<std::complex<double>>> eigs;
  if (j.contains("eigenvalues")) {
    std::vector<std::complex<double>> list;
    for (const auto& entry : j.at("eigenvalues")) {
      if (entry.is_number()) {
        list.emplace_back(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 &&
                 entry[0].is_number() && entry[1].is_number()) {
        list.emplace_back(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw InvalidArgument("eigenvalues must be numbers or [re, im] pairs");
      }
    }
    eigs = std::move(list);
  }

  std::optional<std::vector<int>> blocks;
  if (j.contains("jordan_blocks"))
    blocks = j.at("jordan_blocks").get<std::vector<int>>();

  const double l = j.at("l").get<double>();
  const double c = j.value("c", 0.0);
  return make_plant(std::move(a), std::move(g), std::move(eigs), l, c,
                    std::move(blocks));
}

std::string partition_to_json(const Partition& partition) {
  json j;
  json blocks = json::array();
  for (const AbstractSet& block : partition.blocks) {
    if (const auto* values = std::get_if<ValueSet>(&block)) {
      json b = json::array();
      for (const Value& v : *values) b.push_back(value_to_json(v));
      blocks.push_back(std::move(b));
    } else {
      json b = json::array();
      for (const Interval& p : std::get<IntervalUnion>(block).parts())
        b.push_back(json::array({rational_to_json(p.lo),
                                 rational_to_json(p.hi)}));
      blocks.push_back(std::move(b));
    }
  }
  j["blocks"] = std::move(blocks);
  json provenance = json::object();
  for (const auto& [label, index] : partition.provenance)
    provenance[label.str()] = index;
  j["provenance"] = std::move(provenance);
  j["bits"] = std::log2(static_cast<double>(partition.blocks.size()));
  return j.dump(2) + "\n";
}

std::string profile_to_json(const CapacityProfile& profile) {
  json j;
  json rows = json::array();
  for (const auto& record : profile.records) {
    json row;
    row["tau"] = record.tau;
    row["alpha"] = record.alpha;
    row["rate_bits"] = record.rate_bits;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["best_rate_bits"] = profile.best_rate_bits;
  return j.dump(2) + "\n";
}

std::string profile_to_csv(const CapacityProfile& profile) {
  std::ostringstream os;
  os << "tau,alpha,rate_bits\n";
  for (const auto& record : profile.records) {
    os << record.tau << ',' << record.alpha << ','
       << format_double(record.rate_bits) << '\n';
  }
  return os.str();
}

std::string graph_to_adjacency_text(const Graph& g) {
  std::ostringstream os;
  os << "# vertices " << g.vertex_count() << " edges " << g.edge_count()
     << '\n';
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    os << g.vertex(i).str() << ':';
    for (std::size_t j = 0; j < g.vertex_count(); ++j) {
      if (g.adjacent(i, j)) os << ' ' << g.vertex(j).str();
    }
    os << '\n';
  }
  return os.str();
}

std::string trace_to_csv(const Trace& trace) {
  std::ostringstream os;
  const auto dims =
      trace.rows.empty() ? 0 : static_cast<int>(trace.rows.front().state.size());
  os << 't';
  for (int i = 0; i < dims; ++i) os << ",state_" << i;
  for (int i = 0; i < dims; ++i) os << ",estimate_" << i;
  os << ",err,scaled_err\n";
  char buf[40];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << ',' << buf;
  };
  for (const TraceRow& row : trace.rows) {
    os << row.t;
    for (int i = 0; i < dims; ++i) put(row.state[i]);
    for (int i = 0; i < dims; ++i) put(row.estimate[i]);
    put(row.error);
    put(row.scaled_error);
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  return fnv1a64(read_file(path));
}

}  // namespace nonstoch
