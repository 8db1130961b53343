#include "modal/model_io.hpp"

#include <json.hpp>
#include <sstream>

#include "modal/parser.hpp"

namespace modal {

namespace {

std::string true_atoms(const AtomValuation& val, World w) {
  std::string out;
  for (const auto& [a, col] : val)
    if (w < col.size() && col[w]) out += (out.empty() ? "" : ",") + atom_name(a);
  return out;
}

}  // namespace

std::string model_to_json(const Frame& frame, const AtomValuation& val, std::optional<World> focus) {
  nlohmann::ordered_json j;
  j["worlds"] = nlohmann::json::array();
  for (World w = 0; w < frame.size(); ++w) j["worlds"].push_back(w);
  j["rel"] = nlohmann::json::array();
  for (const auto& [a, b] : frame.edges()) j["rel"].push_back({a, b});
  j["val"] = nlohmann::ordered_json::object();
  for (World w = 0; w < frame.size(); ++w) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& [a, col] : val) row[atom_name(a)] = w < col.size() && col[w];
    j["val"][std::to_string(w)] = row;
  }
  if (focus) j["world"] = *focus;
  return j.dump();
}

LoadedModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
  }
  try {
    const auto& worlds = j.at("worlds");
    const auto k = static_cast<std::uint32_t>(worlds.size());
    for (std::uint32_t i = 0; i < k; ++i)
      if (worlds[i].get<std::uint32_t>() != i) throw std::invalid_argument("worlds must be 0..k-1 in order");
    std::vector<std::pair<World, World>> edges;
    for (const auto& e : j.at("rel")) {
      if (e.size() != 2) throw std::invalid_argument("relation entries must be pairs");
      edges.emplace_back(e[0].get<World>(), e[1].get<World>());
    }
    LoadedModel m{Frame(k, edges), {}};
    if (j.contains("val")) {
      for (const auto& [wkey, row] : j.at("val").items()) {
        const World w = static_cast<World>(std::stoul(wkey));
        if (w >= k) throw std::invalid_argument("valuation for unknown world " + wkey);
        for (const auto& [name, value] : row.items()) {
          const Formula f = parse(name);
          if (!f.is_atom() || f.is_bottom()) throw std::invalid_argument("not an atom: " + name);
          auto& col = m.val.try_emplace(f.atom_value(), std::vector<bool>(k, false)).first->second;
          col[w] = value.get<bool>();
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("malformed atom in model JSON: ") + e.what());
  }
}

std::string model_to_dot(const Frame& frame, const AtomValuation& val, std::optional<World> focus) {
  std::ostringstream out;
  out << "digraph model {\n";
  for (World w = 0; w < frame.size(); ++w) {
    out << "  " << w << " [label=\"" << w << ": " << true_atoms(val, w) << "\"";
    if (focus && *focus == w) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& [a, b] : frame.edges()) out << "  " << a << " -> " << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace modal
