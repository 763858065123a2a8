#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "specseq/bicomplex.hpp"
#include "specseq/filtered.hpp"
#include "specseq/lattice.hpp"
#include "specseq/page.hpp"
#include "specseq/report.hpp"
#include "specseq/tot.hpp"

namespace specseq::app {

/// Objects are std::map backed, so keys always serialize sorted.
using Json = nlohmann::json;

/// Throws ParseError carrying the byte offset of the offending character.
Json parse_json(std::string_view text);
/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
/// Two-space indented text with sorted keys and a trailing newline.
std::string dump(const Json& j);

/// "Q" or {"Fp": N}.
Json to_json(Field f);
Field field_from_json(const Json& j);

/// A list of rows of canonical scalar strings.
Json to_json(const Matrix& m);
/// Entries may be strings ("a", "a/b") or integers. An empty list stands
/// for any matrix with zero rows.
Matrix matrix_from_json(const Json& j, Field f, std::size_t rows, std::size_t cols, const std::string& where);

/// {"field", "degrees": [{"n", "dim", "weights"}], "differentials": {"<n>": matrix}}.
/// Only nonzero differentials are written.
Json to_json(const FilteredComplex& a);
/// `fallback` is used when the object has no "field" key.
FilteredComplex filtered_from_json(const Json& j, Field fallback);

/// {"field", "source", "target", "maps": {"<n>": matrix}}.
Json to_json(const ChainMap& f);
ChainMap chain_map_from_json(const Json& j, Field fallback);

/// {"field", "cells": [{"i", "j", "dim"}], "d0": {"i,j": matrix}, "d1": {"i,j": matrix}}.
Json to_json(const Bicomplex& a);
Bicomplex bicomplex_from_json(const Json& j, Field fallback);

/// {"field", "source", "target", "maps": {"i,j": matrix}}.
Json to_json(const BiMap& f);
BiMap bimap_from_json(const Json& j, Field fallback);

enum class InputKind { filtered, chain_map, bicomplex, bimap };
/// Morphisms carry "maps"; bicomplexes carry "cells".
InputKind detect_kind(const Json& j);
std::string to_string(InputKind k);
/// The "field" key of an object or of its source, if present.
std::optional<Field> declared_field(const Json& j);

/// {"flavor", "field", "r", "zero", "entries": [{"p", "q", "n", "dim"}],
/// "differentials": [{"source": [p, q], "target": [p, q], "matrix"}]}.
Json page_to_json(const PageTable& t, Field f, const std::string& flavor);

Json to_json(const Window& w);
Json to_json(const TruncatedBicomplex& t);
/// {"check", "status"} plus {"witness": {"detail"}} on failure.
Json to_json(const Check& c);
Json to_json(const UnitReport& rep);

Json to_json(const LatticeElement& s);
Json to_json(const LowerSet& l);
/// "0,2" or a JSON array "[0,2]".
LatticeElement element_from_text(std::string_view text);
/// A JSON array of arrays, "[[1],[0,1]]".
LowerSet lower_set_from_text(std::string_view text);

}  // namespace specseq::app
