#pragma once

#include "koz/nonhom.hpp"
#include "koz/potential.hpp"

#include <stdexcept>
#include <string>

namespace koz {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                           ": " + msg),
        line(line), col(col) {}
  int line;
  int col;
};

/// Parsed presentation file: field, generators, homogeneity degree, and the
/// relations split into their degree-N tops and strictly-lower parts.
struct PresentationDocument {
  Field field = Field::rationals();
  std::vector<std::string> generators;
  int N = 2;
  std::string name;
  struct Relation {
    TensorElement top;                 // degree-N part, nonzero
    std::vector<TensorElement> lower;  // lower[k] of degree k, k = 0..N-1
  };
  std::vector<Relation> relations;

  int d() const { return static_cast<int>(generators.size()); }
  bool is_homogeneous() const;

  HomogeneousPresentation to_homogeneous() const;  // requires is_homogeneous()
  /// Echelonizes the tops and transports the lower parts; throws ParseError
  /// when the lower parts are not a well-defined function of the tops.
  NonhomogeneousPresentation to_nonhomogeneous() const;
};

struct PotentialDocument {
  Field field = Field::rationals();
  std::vector<std::string> generators;
  int m = 0;
  std::string name;
  TensorElement w;

  int d() const { return static_cast<int>(generators.size()); }
  Potential to_potential() const { return {d(), m, w}; }
};

struct RepresentationDocument {
  Field field = Field::rationals();
  Representation rep;
  std::string name;
};

PresentationDocument parse_presentation(const std::string& text);
PotentialDocument parse_potential(const std::string& text);
RepresentationDocument parse_representation(const std::string& text);

/// Canonical renderings; parsing the output reproduces the same value.
std::string print_presentation(const PresentationDocument& doc);
std::string print_potential(const PotentialDocument& doc);
std::string print_representation(const RepresentationDocument& doc);

std::string scalar_str(const Field& F, const Scalar& c);

/// Human rendering of a tensor over named generators, e.g. "x*y - y*x".
std::string tensor_str(const Field& F, const std::vector<std::string>& gens,
                       const TensorElement& t);

}  // namespace koz
