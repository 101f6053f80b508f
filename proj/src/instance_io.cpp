#include "qaplab/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qaplab {

namespace {

std::string format_weight(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

WeightedGraph matrix_from_tokens(const std::vector<double>& tok, std::size_t off,
                                 int n, const char* which,
                                 AsymmetryPolicy policy,
                                 std::vector<std::string>* warnings) {
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      double x = tok[off + static_cast<std::size_t>(u) * n + v];
      if (x < 0.0)
        throw std::invalid_argument(std::string("qaplib: negative entry in ") + which);
      g.at(u, v) = x;
    }
  bool symmetric = true;
  for (int u = 0; u < n && symmetric; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.at(u, v) != g.at(v, u)) {
        symmetric = false;
        break;
      }
  if (!symmetric) {
    if (policy == AsymmetryPolicy::reject)
      throw std::invalid_argument(std::string("qaplib: asymmetric ") + which + " matrix");
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double m = 0.5 * (g.at(u, v) + g.at(v, u));
        g.at(u, v) = m;
        g.at(v, u) = m;
      }
    if (warnings)
      warnings->push_back(std::string("symmetrized asymmetric ") + which +
                          " matrix as (A + A^T)/2");
  }
  return g;
}

}  // namespace

QapInstance read_qaplib(const std::string& text, AsymmetryPolicy policy,
                        std::vector<std::string>* warnings) {
  std::istringstream in(text);
  std::vector<double> tok;
  double x;
  while (in >> x) tok.push_back(x);
  if (!in.eof()) {
    // stopped on a non-numeric token
    throw std::invalid_argument("qaplib: non-numeric token");
  }
  if (tok.empty()) throw std::invalid_argument("qaplib: empty input");
  double nd = tok[0];
  if (nd < 1 || nd != std::floor(nd) || nd > 4096)
    throw std::invalid_argument("qaplib: bad size token");
  int n = static_cast<int>(nd);
  std::size_t want = 1 + 2 * static_cast<std::size_t>(n) * n;
  if (tok.size() != want) {
    std::ostringstream msg;
    msg << "qaplib: token count mismatch, expected " << want << " got " << tok.size();
    throw std::invalid_argument(msg.str());
  }
  QapInstance inst;
  inst.g = matrix_from_tokens(tok, 1, n, "flow", policy, warnings);
  inst.h = matrix_from_tokens(tok, 1 + static_cast<std::size_t>(n) * n, n,
                              "distance", policy, warnings);
  inst.unweighted = false;
  inst.validate();
  return inst;
}

std::string write_qaplib(const QapInstance& inst) {
  if (inst.g.n != inst.h.n)
    throw std::invalid_argument("write_qaplib: sides must have equal size");
  std::ostringstream out;
  out << inst.g.n << "\n\n";
  for (const WeightedGraph* m : {&inst.g, &inst.h}) {
    for (int u = 0; u < m->n; ++u) {
      for (int v = 0; v < m->n; ++v) {
        if (v) out << ' ';
        out << format_weight(m->at(u, v));
      }
      out << '\n';
    }
    if (m == &inst.g) out << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json matrix_to_json(const WeightedGraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int u = 0; u < g.n; ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (int v = 0; v < g.n; ++v) row.push_back(g.at(u, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

WeightedGraph matrix_from_json(const nlohmann::json& rows, int n) {
  WeightedGraph g(n);
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("instance json: matrix row count mismatch");
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(rows[u].size()) != n)
      throw std::invalid_argument("instance json: matrix column count mismatch");
    for (int v = 0; v < n; ++v) g.at(u, v) = rows[u][v].get<double>();
  }
  return g;
}

}  // namespace

std::string instance_to_json(const QapInstance& inst) {
  nlohmann::json j;
  j["n_g"] = inst.g.n;
  j["n_h"] = inst.h.n;
  j["w_g"] = matrix_to_json(inst.g);
  j["w_h"] = matrix_to_json(inst.h);
  j["unweighted"] = inst.unweighted;
  return j.dump(2);
}

QapInstance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  QapInstance inst;
  inst.g = matrix_from_json(j.at("w_g"), j.at("n_g").get<int>());
  inst.h = matrix_from_json(j.at("w_h"), j.at("n_h").get<int>());
  inst.unweighted = j.value("unweighted", false);
  inst.validate();
  return inst;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

QapInstance load_instance(const std::string& path,
                          std::vector<std::string>* warnings) {
  std::string text = read_text_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return instance_from_json(text);
  return read_qaplib(text, AsymmetryPolicy::symmetrize, warnings);
}

void save_instance_json(const QapInstance& inst, const std::string& path) {
  write_text_file(path, instance_to_json(inst) + "\n");
}

}  // namespace qaplab
