#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sinrnc/sinr.hpp"

namespace sinrnc::io {

// Shortest decimal that is still 17 significant digits ("%.17g").
std::string format_double(double v);

// Instance text format:
//
//   sinrnc-instance 1
//   param <key> <value>        (n0 gamma beta rate capacity_model pl_c pl_alpha pl_d0)
//   power constant <p0> | power uniform <p_min> <p_max> | power discrete <p>:<q>,...
//   nodes <count>
//   <id> <x> <y> <power> <none|source|relay|destination>   (one per node, ids 0..n-1)
void write_instance(std::ostream& out, const sinr::NetworkInstance& inst);
sinr::NetworkInstance read_instance(std::istream& in);

// Capacity matrix as sparse triplets of the nonzero entries:
//
//   sinrnc-capacity 1
//   nodes <n>
//   variant <G|Gprime|Gdoubleprime>
//   model <r0|gaussian>
//   entries <count>
//   <i> <j> <capacity>
void write_graph(std::ostream& out, const sinr::SinrGraph& graph);
sinr::SinrGraph read_graph(std::istream& in);

std::string instance_to_string(const sinr::NetworkInstance& inst);

void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

// Flat "key = value" text; '#' starts a comment. Later keys win.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);

std::string power_to_string(const sinr::PowerModel& power);
sinr::PowerModel power_from_tokens(const std::vector<std::string>& tokens);

double parse_double(const std::string& key, const std::string& value);
std::size_t parse_size(const std::string& key, const std::string& value);
std::vector<std::size_t> parse_id_list(const std::string& key, const std::string& value);

}  // namespace sinrnc::io
