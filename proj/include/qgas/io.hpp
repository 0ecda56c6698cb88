// Copyright 2026 The qgas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text readers for circuits and graphs. Both are line based with `#`
// comments; see docs/formats.md.

#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qgas/circuit.hpp"
#include "qgas/comm.hpp"
#include "qgas/polynomial.hpp"

namespace qgas {

namespace detail {

inline std::vector<std::string> tokens_of(std::string raw) {
  if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
  std::istringstream ss(raw);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

inline unsigned parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  try {
    return static_cast<unsigned>(std::stoul(tok));
  } catch (const std::exception&) {
    throw ParseError(line, "integer out of range '" + tok + "'");
  }
}

}  // namespace detail

/// First statement `qubits N`, then one gate per line:
///   h|x|y|z|s q        cx c t        p angle q
///   mcp angle t c...   qft lo width  iqft lo width
inline Circuit read_circuit(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  std::optional<Circuit> circuit;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = detail::tokens_of(raw);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    auto need = [&](std::size_t count) {
      if (tok.size() != count) {
        throw ParseError(line, "'" + op + "' takes " + std::to_string(count - 1) + " arguments");
      }
    };
    if (!circuit) {
      if (op != "qubits") throw ParseError(line, "expected 'qubits N' first");
      need(2);
      circuit.emplace(detail::parse_index(tok[1], line));
      continue;
    }
    auto idx = [&](std::size_t i) { return detail::parse_index(tok[i], line); };
    Gate g;
    if (op == "h" || op == "x" || op == "y" || op == "z" || op == "s") {
      need(2);
      const unsigned q = idx(1);
      g = op == "h" ? Gate::h(q) : op == "x" ? Gate::x(q) : op == "y" ? Gate::y(q) : op == "z" ? Gate::z(q) : Gate::s(q);
    } else if (op == "cx") {
      need(3);
      g = Gate::cnot(idx(1), idx(2));
    } else if (op == "p") {
      need(3);
      g = Gate::phase(detail::parse_number(tok[1], line), idx(2));
    } else if (op == "mcp") {
      if (tok.size() < 3) throw ParseError(line, "'mcp' takes an angle, a target and controls");
      std::vector<unsigned> controls;
      for (std::size_t i = 3; i < tok.size(); ++i) controls.push_back(idx(i));
      g = Gate::mc_phase(detail::parse_number(tok[1], line), idx(2), std::move(controls));
    } else if (op == "qft" || op == "iqft") {
      need(3);
      g = op == "qft" ? Gate::qft(idx(1), idx(2)) : Gate::iqft(idx(1), idx(2));
    } else {
      throw ParseError(line, "unknown gate '" + op + "'");
    }
    try {
      circuit->add(std::move(g));
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!circuit) throw ParseError(line, "missing 'qubits N' statement");
  return std::move(*circuit);
}

/// `vertices N` first, then one `u v` edge per line.
inline ColoringInstance read_graph(std::istream& in, unsigned colors) {
  std::string raw;
  std::size_t line = 0;
  std::optional<ColoringInstance> g;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = detail::tokens_of(raw);
    if (tok.empty()) continue;
    if (!g) {
      if (tok.size() != 2 || tok[0] != "vertices") throw ParseError(line, "expected 'vertices N' first");
      g.emplace();
      g->vertices = detail::parse_index(tok[1], line);
      g->colors = colors;
      continue;
    }
    if (tok.size() != 2) throw ParseError(line, "expected an edge 'u v'");
    const unsigned u = detail::parse_index(tok[0], line);
    const unsigned v = detail::parse_index(tok[1], line);
    if (u >= g->vertices || v >= g->vertices) throw ParseError(line, "edge references a missing vertex");
    if (u == v) throw ParseError(line, "self-loop on vertex " + std::to_string(u));
    g->edges.emplace_back(u, v);
  }
  if (!g) throw ParseError(line, "missing 'vertices N' statement");
  g->validate();
  return std::move(*g);
}

}  // namespace qgas
