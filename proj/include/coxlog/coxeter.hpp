#pragma once
#include <optional>
#include <string>
#include <vector>

#include "coxlog/forms.hpp"

namespace coxlog {

struct Hyperplane {
  LinearForm form;  // normalized defining form (first nonzero coefficient 1)
  LinearForm root;  // a root cutting this hyperplane, kept unnormalized so its
                    // squared length is constant along the orbit
  int orbit = 0;
  int factor = 0;
};

struct IrreducibleFactor {
  std::string name;
  int rank = 0;
  std::vector<int> var_indices;          // into the parent datum's variables
  std::vector<LinearForm> simple_roots;  // in parent coordinates
  // Basic invariants P_1, ..., P_rank with deg P_j = exponent_j + 1, degrees
  // ascending and the top degree strict, which pins the flat direction.
  std::vector<MultiPoly> invariants;
  std::vector<int> exponents;
  int coxeter_number = 0;
  MultiPoly q_poly;                      // product of this factor's forms
  std::vector<int> hyperplanes;          // indices into the parent datum
};

// A finite real reflection arrangement in explicit exact coordinates,
// possibly a product of irreducible factors, together with its basic
// invariants and defining polynomial.
struct CoxeterDatum {
  std::string type_string;
  VarsPtr vars;
  Metric metric;
  std::vector<Hyperplane> hyperplanes;
  std::vector<IrreducibleFactor> factors;
  std::vector<std::string> orbit_names;
  MultiPoly q_poly;            // product over all hyperplanes
  unsigned long discriminant;  // radicand of the coefficient field, 0 = rational

  int rank() const { return static_cast<int>(vars->size()); }
  int num_hyperplanes() const { return static_cast<int>(hyperplanes.size()); }
  int orbit_count() const { return static_cast<int>(orbit_names.size()); }
  // One reflection per simple root of every factor; these generate the group.
  std::vector<Reflection> generators() const;
  // Hyperplane indices grouped by orbit.
  std::vector<std::vector<int>> orbit_decomposition() const;
  // All basic invariants in factor order (the coordinates of the quotient).
  std::vector<MultiPoly> all_invariants() const;
};

// Integer multiplicity assignment on the hyperplanes, constant on orbits or
// not; parsed from "const:<int>", "orbit:<name>=<int>,...", or
// "list:<int>,...".
class MultiplicityMap {
 public:
  static MultiplicityMap constant(const CoxeterDatum& d, int m);
  static MultiplicityMap from_values(const CoxeterDatum& d, std::vector<int> values);
  static MultiplicityMap parse(const CoxeterDatum& d, const std::string& spec);

  int operator[](int hyperplane) const {
    return values_.at(static_cast<size_t>(hyperplane));
  }
  const std::vector<int>& values() const { return values_; }
  bool is_constant() const;
  bool is_orbit_constant(const CoxeterDatum& d) const;
  MultiplicityMap shifted(int delta) const;
  MultiplicityMap negated() const;
  std::string description() const;  // canonical spec string

 private:
  std::vector<int> values_;
  std::string description_;
};

// Names accepted by build_irreducible.
std::vector<std::string> catalog_types();

// "A3", "B2", "D4", "I2(5)", "H3" (case-insensitive).
CoxeterDatum build_irreducible(const std::string& name);

// External product with fresh variable names; a single factor is returned
// unchanged.
CoxeterDatum product(const std::vector<CoxeterDatum>& factors);

// Full type grammar: factors joined by 'x', e.g. "A1xB2xA2".
CoxeterDatum build_type(const std::string& type_string);

}  // namespace coxlog
