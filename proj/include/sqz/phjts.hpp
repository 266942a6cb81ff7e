#pragma once

// Positive Hermitian Jordan triple systems for the four classical Cartan
// factor families.
//
// Carriers and triple products:
//
//   type I(p,q), p <= q : complex p x q matrices,
//                         {A,B,C} = A B* C + C B* A        (B* = conj-transpose)
//   type II(n)          : antisymmetric n x n matrices, product inherited
//                         from I(n,n) (closed under the product)
//   type III(n)         : symmetric n x n matrices, likewise inherited
//   type IV(n), n >= 2  : C^n (spin factor),
//                         {x,y,z} = <x,y> z + <z,y> x - (x.z) conj(y),
//                         <x,y> the Hermitian pairing, x.z the bilinear form
//
// The product is symmetric bilinear in the outer arguments, conjugate-linear
// in the middle one, and with these normalisations D(e,e)e = 2e for every
// tripotent e, so the Pierce spectrum is {0,1,2}.
//
// Coordinates: every element is stored as a packed complex vector whose
// length is the complex dimension of the carrier, orthonormal with respect
// to the invariant inner product under which orthogonal tripotents are
// perpendicular and primitive tripotents have length one.  Concretely:
//   I   : row-major matrix entries (trace form)
//   II  : strict upper-triangular entries, row-major (half trace form)
//   III : diagonal entries, then upper-triangular entries scaled by sqrt(2)
//   IV  : plain vector entries (standard Hermitian form)
// The packed Euclidean norm therefore *is* the invariant norm everywhere.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqz/errors.hpp"
#include "sqz/rng.hpp"

namespace sqz::jts {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class FactorKind { TypeI, TypeII, TypeIII, TypeIV };

// Descriptor of one irreducible classical factor: the kind plus its shape.
// The rank comes from the closed-form table and is certified against
// system_rank() in the test suite.
class CartanFactor {
public:
    static CartanFactor type_i(int p, int q);
    static CartanFactor type_ii(int n);
    static CartanFactor type_iii(int n);
    static CartanFactor type_iv(int n);

    FactorKind kind() const { return kind_; }
    int p() const { return p_; }
    int q() const { return q_; }
    // matrix shape of the unpacked carrier (n x 1 for type IV)
    int rows() const;
    int cols() const;
    int ambient_dim() const;
    int rank() const;
    std::string name() const;

    bool operator==(const CartanFactor& other) const {
        return kind_ == other.kind_ && p_ == other.p_ && q_ == other.q_;
    }
    bool operator!=(const CartanFactor& other) const { return !(*this == other); }

private:
    CartanFactor(FactorKind kind, int p, int q) : kind_(kind), p_(p), q_(q) {}
    FactorKind kind_;
    int p_;  // rows (types II/III/IV store n here)
    int q_;  // cols (equal to p for II/III, 1-ish unused for IV)
};

// A point of the carrier vector space, held in packed coordinates.
class JtsElement {
public:
    JtsElement(CartanFactor factor, Vec coords);

    static JtsElement zero(const CartanFactor& factor);
    // k-th packed coordinate vector
    static JtsElement basis(const CartanFactor& factor, int k);
    // Builds from the unpacked matrix (types I/II/III) or the plain vector
    // (type IV).  Antisymmetry/symmetry of the input is required for types
    // II/III; the stored packed form is exactly (anti)symmetric.
    static JtsElement from_matrix(const CartanFactor& factor, const Mat& m);

    const CartanFactor& factor() const { return factor_; }
    const Vec& coords() const { return coords_; }
    // Unpacked matrix (p x q, n x n antisymmetric/symmetric, or n x 1).
    Mat to_matrix() const;

    // invariant (= packed Euclidean) norm
    double norm() const { return coords_.norm(); }
    bool is_zero() const { return coords_.norm() == 0.0; }

    JtsElement operator+(const JtsElement& other) const;
    JtsElement operator-(const JtsElement& other) const;
    JtsElement operator*(Complex scalar) const;
    JtsElement operator*(double scalar) const { return *this * Complex(scalar, 0.0); }

private:
    CartanFactor factor_;
    Vec coords_;
};

// x = lambda_1 e_1 + ... + lambda_s e_s with lambda_1 > ... > lambda_s > 0
// and pairwise orthogonal nonzero tripotents e_i.
struct SpectralDecomposition {
    std::vector<double> lambdas;
    std::vector<JtsElement> tripotents;
    double residual = 0.0;  // norm of x - sum lambda_i e_i

    int size() const { return static_cast<int>(lambdas.size()); }
};

// Eigenspace split of D(e,e) for the eigenvalues 0, 1, 2.  Columns of each
// basis block are orthonormal packed coordinate vectors.
struct PierceDecomposition {
    JtsElement e;
    Mat basis0, basis1, basis2;
    std::array<int, 3> dims{};
    double eigenvalue_residual = 0.0;  // max distance of spec(D(e,e)) to {0,1,2}
};

// ---- operations -------------------------------------------------------------

// {x,y,z}; symmetric bilinear in (x,z), conjugate-linear in y.
JtsElement triple_product(const JtsElement& x, const JtsElement& y, const JtsElement& z);

// Q(x)y = {x,y,x}/2
JtsElement quadratic_map(const JtsElement& x, const JtsElement& y);

// x^(1) = x, x^(2p+1) = Q(x) x^(2p-1); k must be odd and positive.
JtsElement odd_power(const JtsElement& x, int k);

bool is_tripotent(const JtsElement& x, double tol);

// Largest spectral coefficient; 0 for x = 0.
double spectral_norm(const JtsElement& x);

SpectralDecomposition spectral_decompose(const JtsElement& x, double tol);

PierceDecomposition pierce_decompose(const JtsElement& e, double tol);

bool are_orthogonal(const JtsElement& e1, const JtsElement& e2, double tol);

// e dominated by eprime: eprime - e is a tripotent orthogonal to e.
bool dominates(const JtsElement& e, const JtsElement& eprime, double tol);

// Number of mutually orthogonal primitive tripotents summing to e.
int tripotent_rank(const JtsElement& e);

// Maximum spectral length over `trials` random elements; almost surely the
// rank of the system.  Deterministic for a fixed seed.
int system_rank(const CartanFactor& factor, int trials, std::uint64_t seed);

// ---- helpers ----------------------------------------------------------------

// Matrix of the C-linear operator z -> {x,y,z} in packed coordinates.
Mat d_operator_matrix(const JtsElement& x, const JtsElement& y);

// Largest singular value of D(x,y).
double d_operator_norm(const JtsElement& x, const JtsElement& y);

// Element with iid Gaussian packed coordinates.
JtsElement random_element(const CartanFactor& factor, Rng& rng);

// Norm of {x,y,{u,v,w}} - {{x,y,u},v,w} - {u,v,{x,y,w}} + {u,{y,x,v},w}.
double jordan_residual(const JtsElement& x, const JtsElement& y, const JtsElement& u,
                       const JtsElement& v, const JtsElement& w);

}  // namespace sqz::jts
