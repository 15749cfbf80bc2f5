#include <fstream>
#include <sstream>

#include "json.hpp"
#include "schmidt_lens/channels.hpp"
#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

std::string channel_to_json(const QuantumChannel& ch) {
  nlohmann::ordered_json j;
  j["d_in"] = ch.d_in();
  j["d_out"] = ch.d_out();
  auto& list = j["kraus"] = nlohmann::ordered_json::array();
  for (const auto& k : ch.kraus()) {
    auto entries = nlohmann::ordered_json::array();
    for (const Complex& z : k.data()) entries.push_back({z.real(), z.imag()});
    list.push_back(std::move(entries));
  }
  return j.dump();
}

QuantumChannel channel_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  try {
    const auto d_in = j.at("d_in").get<std::size_t>();
    const auto d_out = j.at("d_out").get<std::size_t>();
    const auto& list = j.at("kraus");
    if (!list.is_array() || list.empty()) throw Error(ErrorKind::ParseError, "kraus must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& entries : list) {
      if (!entries.is_array() || entries.size() != d_in * d_out) {
        throw Error(ErrorKind::ParseError, "each Kraus operator needs d_out * d_in entries");
      }
      std::vector<Complex> values;
      values.reserve(entries.size());
      for (const auto& pair : entries) {
        if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::ParseError, "entries are [re, im] pairs");
        values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      }
      kraus.emplace_back(d_out, d_in, std::move(values));
    }
    return QuantumChannel(std::move(kraus));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

QuantumChannel load_channel_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return channel_from_json(buffer.str());
}

}  // namespace schmidt_lens
