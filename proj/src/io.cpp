#include "woven/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace woven {

namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool scalars_only(const nlohmann::json& arr) {
  for (const auto& el : arr) {
    if (el.is_structured()) return false;
  }
  return true;
}

void dump_rec(const nlohmann::json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // keys sorted by map order
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_array = scalars_only(j);
      out += "[";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += inline_array ? ", " : ",";
        if (!inline_array) out += "\n" + pad_in;
        first = false;
        dump_rec(el, out, depth + 1);
      }
      if (!inline_array) out += "\n" + pad;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw Error("refusing to serialize a non-finite number");
  }
  if (v == 0.0) {
    // "-0" would reparse as integer zero and lose the sign bit
    return std::signbit(v) ? "-0.0" : "0";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_deterministic(const nlohmann::json& j) {
  std::string out;
  dump_rec(j, out, 0);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_file(const std::filesystem::path& path) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(read_bytes(path))));
  return buf;
}

FrameFile read_frame_file(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_bytes(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("vectors")) {
    throw ParseError("'" + path.string() + "': expected {\"dim\", \"vectors\"}");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ParseError("'" + path.string() + "': dim must be a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(j["dim"].get<long long>());
  const auto& vecs = j["vectors"];
  if (!vecs.is_array()) {
    throw ParseError("'" + path.string() + "': vectors must be an array");
  }
  Mat cols(dim, static_cast<Eigen::Index>(vecs.size()));
  Eigen::Index i = 0;
  for (const auto& v : vecs) {
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != dim) {
      throw ParseError("'" + path.string() + "': every vector needs exactly dim entries");
    }
    Eigen::Index k = 0;
    for (const auto& x : v) {
      if (!x.is_number()) {
        throw ParseError("'" + path.string() + "': vector entries must be numbers");
      }
      const double value = x.get<double>();
      if (!std::isfinite(value)) {
        throw ParseError("'" + path.string() + "': non-finite vector entry");
      }
      cols(k++, i) = value;
    }
    ++i;
  }

  FrameFile out{Frame(std::move(cols)), std::nullopt};
  if (j.contains("name")) {
    if (!j["name"].is_string()) {
      throw ParseError("'" + path.string() + "': name must be a string");
    }
    out.name = j["name"].get<std::string>();
  }
  return out;
}

void write_frame_file(const std::filesystem::path& path, const Frame& frame,
                      const std::optional<std::string>& name) {
  nlohmann::json j;
  j["dim"] = static_cast<long long>(frame.dim());
  nlohmann::json vecs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < frame.count(); ++i) {
    nlohmann::json v = nlohmann::json::array();
    for (Eigen::Index k = 0; k < frame.dim(); ++k) {
      v.push_back(frame.columns()(k, i));
    }
    vecs.push_back(std::move(v));
  }
  j["vectors"] = std::move(vecs);
  if (name) j["name"] = *name;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << dump_deterministic(j) << "\n";
}

Mat read_matrix_file(const std::filesystem::path& path) {
  return read_frame_file(path).frame.columns();
}

std::string Report::to_json() const {
  nlohmann::json root;
  root["command"] = command;
  root["inputs"] = inputs;
  root["results"] = results;
  root["tool_version"] = kToolVersion;
  return dump_deterministic(root);
}

}  // namespace woven
