#include "mssc/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mssc {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kInvalidInstance, "field '" + field + "': " + what);
}

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(key, "expected integer, got " + std::string(v.type_name()));
  return v.get<int>();
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInstance, e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected object");

  const int n = require_int(doc, "n");
  const int r = require_int(doc, "r");
  if (n < 1) fail("n", "must be >= 1, got " + std::to_string(n));
  if (r < 1) fail("r", "must be >= 1, got " + std::to_string(r));

  if (!doc.contains("initial") || !doc["initial"].is_array()) fail("initial", "missing or not an array");
  const json& initial = doc["initial"];
  if (static_cast<int>(initial.size()) != n) {
    fail("initial", "has " + std::to_string(initial.size()) + " entries, expected n=" + std::to_string(n));
  }
  std::vector<Element> order;
  order.reserve(n);
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (!initial[i].is_number_integer()) fail("initial[" + std::to_string(i) + "]", "expected integer");
    order.push_back(initial[i].get<int>());
  }

  Instance inst;
  inst.r = r;
  try {
    inst.initial = Permutation::from_order(std::move(order));
  } catch (const Error& e) {
    fail("initial", e.what());
  }

  if (!doc.contains("requests") || !doc["requests"].is_array()) fail("requests", "missing or not an array");
  const json& requests = doc["requests"];
  inst.requests.reserve(requests.size());
  for (std::size_t t = 0; t < requests.size(); ++t) {
    const std::string field = "requests[" + std::to_string(t) + "]";
    if (!requests[t].is_array()) fail(field, "expected array");
    std::vector<Element> elems;
    for (std::size_t j = 0; j < requests[t].size(); ++j) {
      const json& v = requests[t][j];
      if (!v.is_number_integer()) fail(field + "[" + std::to_string(j) + "]", "expected integer");
      int z = v.get<int>();
      if (z < 0 || z >= n) {
        fail(field + "[" + std::to_string(j) + "]", "element " + std::to_string(z) + " outside 0.." + std::to_string(n - 1));
      }
      elems.push_back(z);
    }
    if (static_cast<int>(elems.size()) > r) {
      fail(field, "has " + std::to_string(elems.size()) + " elements, exceeds r=" + std::to_string(r));
    }
    try {
      inst.requests.emplace_back(std::move(elems));
    } catch (const Error& e) {
      fail(field, e.what());
    }
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["n"] = instance.n();
  doc["r"] = instance.r;
  doc["initial"] = std::vector<Element>(instance.initial.order().begin(), instance.initial.order().end());
  json reqs = json::array();
  for (const Request& req : instance.requests) {
    reqs.push_back(std::vector<Element>(req.elements().begin(), req.elements().end()));
  }
  doc["requests"] = std::move(reqs);
  return doc.dump();
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << instance_to_json(instance) << '\n';
}

}  // namespace mssc
