#pragma once

#include <iosfwd>
#include <string>

#include "trigather/engine.hpp"
#include "trigather/swarm.hpp"

namespace trigather {

inline constexpr const char* kStateFormat = "trigather-state/1";
inline constexpr const char* kTraceFormat = "trigather-trace/1";

/// State documents: one object with `format` and `coords` (doubled
/// coordinates, duplicates allowed). Parsing rejects odd-parity pairs and
/// empty swarms with distinct diagnostics.
GlobalState parse_state(const std::string& document);
std::string serialize_state(const GlobalState& state);

GlobalState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const GlobalState& state);

/// Trace documents are line-delimited: a header object with `format`,
/// `config` and `initialState`, one object per event, and a footer with
/// `finalState`, `rounds` and `outcome`.
void write_trace(std::ostream& out, const Trace& trace);
std::string serialize_trace(const Trace& trace);
Trace parse_trace(std::istream& in);

Trace read_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const Trace& trace);

} // namespace trigather
