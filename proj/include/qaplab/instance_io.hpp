#pragma once

#include <string>
#include <vector>

#include "qaplab/graph.hpp"

namespace qaplab {

enum class AsymmetryPolicy { reject, symmetrize };

// QAPLIB text layout: first token n, then the n*n flow matrix, then the n*n
// distance matrix, whitespace separated. The flow matrix becomes g and the
// distance matrix h. With AsymmetryPolicy::symmetrize an asymmetric matrix is
// replaced by (A + A^T)/2 and a warning is appended.
QapInstance read_qaplib(const std::string& text,
                        AsymmetryPolicy policy = AsymmetryPolicy::reject,
                        std::vector<std::string>* warnings = nullptr);
std::string write_qaplib(const QapInstance& inst);

// Native JSON format: {n_g, n_h, w_g: [[...]], w_h: [[...]], unweighted}.
std::string instance_to_json(const QapInstance& inst);
QapInstance instance_from_json(const std::string& text);

// Dispatches on extension: .json -> native, anything else -> QAPLIB.
QapInstance load_instance(const std::string& path,
                          std::vector<std::string>* warnings = nullptr);
void save_instance_json(const QapInstance& inst, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qaplab
