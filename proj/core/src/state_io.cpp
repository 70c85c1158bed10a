#include "polyent/state_io.hpp"

#include <json.hpp>

namespace polyent {

namespace {

using nlohmann::json;

std::vector<cplx> read_data(const json& data) {
  if (!data.is_array()) throw DomainError("state \"data\" must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(data.size());
  for (const auto& entry : data) {
    if (entry.is_number()) {
      out.emplace_back(entry.get<double>(), 0.0);
      continue;
    }
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw DomainError("state \"data\" entries must be [re, im] number pairs");
    }
    out.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return out;
}

MultipartiteState from_json(const json& j) {
  if (!j.is_object()) throw DomainError("state must be a JSON object");
  for (const char* key : {"kind", "dims", "data"}) {
    if (!j.contains(key)) throw DomainError(std::string("state is missing \"") + key + "\"");
  }
  if (!j["kind"].is_string()) throw DomainError("state \"kind\" must be a string");
  const std::string kind = j["kind"].get<std::string>();
  if (!j["dims"].is_array() || j["dims"].empty()) throw DimensionError("state \"dims\" must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 2 || d.get<long long>() > 4096) {
      throw DimensionError("state dims must be integers >= 2");
    }
    dims.push_back(d.get<int>());
  }
  const DimList dl(dims);
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw DomainError("state labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  const std::vector<cplx> data = read_data(j["data"]);
  const Eigen::Index n = dl.total();
  if (kind == "pure") {
    if (static_cast<Eigen::Index>(data.size()) != n) throw DimensionError("pure state needs prod(dims) entries");
    CVector psi(n);
    for (Eigen::Index i = 0; i < n; ++i) psi(i) = data[i];
    return MultipartiteState::pure(std::move(psi), dl, labels);
  }
  if (kind == "mixed") {
    if (static_cast<Eigen::Index>(data.size()) != n * n) throw DimensionError("mixed state needs prod(dims)^2 entries");
    CMatrix rho(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) rho(r, c) = data[r * n + c];
    return MultipartiteState::mixed(std::move(rho), dl, labels);
  }
  throw DomainError("state \"kind\" must be \"pure\" or \"mixed\"");
}

json to_json(const MultipartiteState& state) {
  json j;
  j["kind"] = state.is_pure() ? "pure" : "mixed";
  j["dims"] = state.dims().values();
  j["labels"] = state.labels();
  json data = json::array();
  if (state.is_pure()) {
    for (Eigen::Index i = 0; i < state.vector().size(); ++i) {
      data.push_back({state.vector()(i).real(), state.vector()(i).imag()});
    }
  } else {
    const CMatrix rho = state.density();
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      for (Eigen::Index c = 0; c < rho.cols(); ++c) data.push_back({rho(r, c).real(), rho(r, c).imag()});
  }
  j["data"] = std::move(data);
  return j;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

MultipartiteState parse_state(const std::string& text) { return from_json(parse_json(text)); }

std::vector<MultipartiteState> parse_state_list(const std::string& text) {
  const json j = parse_json(text);
  std::vector<MultipartiteState> out;
  if (j.is_object()) {
    out.push_back(from_json(j));
    return out;
  }
  if (!j.is_array()) throw DomainError("expected a state object or an array of states");
  for (const auto& item : j) out.push_back(from_json(item));
  return out;
}

std::string format_state(const MultipartiteState& state) { return to_json(state).dump(); }

std::string format_state_list(const std::vector<MultipartiteState>& states) {
  json arr = json::array();
  for (const auto& s : states) arr.push_back(to_json(s));
  return arr.dump();
}

}  // namespace polyent
