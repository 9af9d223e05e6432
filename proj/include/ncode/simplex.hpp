#ifndef NCODE_SIMPLEX_HPP
#define NCODE_SIMPLEX_HPP

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncode/code.hpp"

namespace ncode {

using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Rational>; // d exact coordinates

// A d-dimensional simplex: d+1 affinely independent vertices in Q^d.
// Degeneracy is rejected at construction by an exact determinant.
class Simplex {
public:
    Simplex(int d, std::vector<Point> vertices); // DegenerateSimplex, BadParameters

    int dim() const { return d_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(std::size_t k) const { return vertices_[k]; }

    // Vertex-set equality (order-insensitive).
    bool same_vertices(const Simplex& other) const;

private:
    int d_;
    std::vector<Point> vertices_;
};

using SimplexFamily = std::vector<Simplex>;

// A hyperplane <a, x> = b with integer coefficients in lowest terms and the
// first nonzero coordinate of a positive, so equality is field-wise.
// Side 0 = {x : <a,x> < b}, side 1 = {x : <a,x> > b}.
struct OrientedHyperplane {
    std::vector<BigInt> normal;
    BigInt offset;

    static OrientedHyperplane canonical(std::vector<Rational> a, Rational b);

    // Sign of <a, x> - b: -1 (side 0), 0 (on), +1 (side 1).
    int side_of(const Point& x) const;

    std::string str() const; // "(a1,...,ad | b)"
    bool operator==(const OrientedHyperplane& other) const = default;
};

// Format: header "d=<d>"; each simplex d+1 lines of d rationals ("p/q" or
// integers); simplices separated by blank lines; '#' comments allowed.
// Throws ParseFailure, DegenerateSimplex(index in message).
SimplexFamily parse_simplices(std::string_view text);

// The d+1 canonical hyperplanes spanned by the facets, indexed by the
// opposite vertex.
std::vector<OrientedHyperplane> facet_hyperplanes(const Simplex& s);

struct BuiltCode {
    Code code;
    // Column i of the code corresponds to hyperplanes[i-1].
    std::vector<OrientedHyperplane> hyperplanes;
};

// The word map v(σ): collect all distinct facet hyperplanes over the
// family (first-seen order); v_i is the side of σ when H_i is spanned by
// one of σ's own facets, * otherwise. Every word has d+1 proper letters.
// Throws DuplicateSimplex, BadParameters on an empty family.
BuiltCode build_code(const SimplexFamily& family);

// True iff the closed triangles intersect in a segment of positive length
// (affine dimension exactly 1). Exact convex polygon clipping; d = 2 only
// (WrongDimension otherwise).
bool neighborly_pair_2d(const Simplex& s1, const Simplex& s2);

} // namespace ncode

#endif
