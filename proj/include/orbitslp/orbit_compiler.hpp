#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitslp/field.hpp"
#include "orbitslp/groebner.hpp"
#include "orbitslp/polynomial.hpp"
#include "orbitslp/slp.hpp"

namespace orbitslp {

/// G as a closed subvariety of affine l-space, given by generators of its ideal.
struct GroupSpec {
    FieldSpec field = FieldSpec::rationals();
    std::size_t ambient_dim = 0;  // l
    std::size_t group_dim = 0;    // m
    std::vector<std::string> vars;
    std::vector<Polynomial> generators;

    /// Parses generator strings over `vars` (defaults z1..zl when empty).
    static GroupSpec parse(FieldSpec field, std::size_t ambient_dim, std::size_t group_dim,
                           std::vector<std::string> vars, std::span<const std::string> generators);

    /// max(1, max generator degree).
    std::uint64_t max_generator_degree() const;
};

/// The representation: an n x n matrix of polynomials in the group coordinates.
struct RepSpec {
    std::size_t n = 0;
    std::vector<std::vector<Polynomial>> rho;

    static RepSpec parse(const GroupSpec& group, std::size_t n, const std::vector<std::vector<std::string>>& rho);

    /// Largest entry degree (0 when every entry is constant or zero).
    std::uint64_t max_entry_degree() const;
    /// rho(g) * p for a point g of the ambient space.
    std::vector<FieldElement> act(std::span<const FieldElement> g, std::span<const FieldElement> p) const;
};

struct OrbitParams {
    /// Maximal orbit dimension; defaults to min(m, n).
    std::optional<std::uint64_t> r;
    /// Replaces the computed iteration count when set.
    std::optional<std::uint64_t> bound_override;
};

/// Where the ideal-basis columns sit in each iteration's matrix.
enum class ColumnOrder {
    kIdealFirst,  // ideal basis, then orbit vectors (default)
    kOrbitFirst,  // orbit vectors, then ideal basis
};

/// Which vectors carry over to the next iteration.
enum class SlotRule {
    kAllIndependent,       // every independent vector, H(iN) slots, all multiplied (default)
    kNewfoundByPosition,   // H(i) slots; only slots past H(i-1) are multiplied
};

inline constexpr std::size_t kDefaultCellCap = 20000;
inline constexpr std::uint64_t kMaxIterations = 4096;

struct CompileOptions {
    ColumnOrder column_order = ColumnOrder::kIdealFirst;
    SlotRule slot_rule = SlotRule::kAllIndependent;
    /// Largest rows*cols allowed for any iteration matrix.
    std::size_t cell_cap = kDefaultCellCap;

    /// Defaults, with ORBITSLP_CELL_CAP applied when set.
    static CompileOptions from_environment();
};

/// Compilation would need a matrix (or iteration count) beyond the configured ceiling.
class CeilingExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PhaseSpan {
    std::string name;
    std::size_t begin;
    std::size_t end;
    friend bool operator==(const PhaseSpan&, const PhaseSpan&) = default;
};

struct IterationLayout {
    std::size_t degree;           // i*N, the largest monomial degree in this iteration
    std::size_t rows;             // monomials of degree <= i*N
    std::size_t ideal_columns;    // |B(iN)|
    std::size_t orbit_columns;    // k_i
    std::size_t carried_slots;    // vectors kept for the next iteration (0 in the last)
    std::size_t signature_offset; // first output scalar of this iteration
    std::size_t signature_size;   // (ideal_columns + orbit_columns) * orbit_columns
    std::vector<PhaseSpan> phases;
    friend bool operator==(const IterationLayout&, const IterationLayout&) = default;
};

struct SeparatorLayout {
    std::uint64_t d_max = 0;
    std::size_t ambient_dim = 0;
    std::size_t group_dim = 0;
    std::size_t n = 0;
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    std::uint64_t r = 0;
    /// H(d) for d = 0..d_max*N.
    std::vector<std::size_t> hilbert;
    std::vector<IterationLayout> iterations;
    /// Trailing recalls that gather the signature.
    PhaseSpan output_phase;
    std::string group_digest;
    std::string rep_digest;
    friend bool operator==(const SeparatorLayout&, const SeparatorLayout&) = default;
};

struct CompiledSeparator {
    Program program;
    SeparatorLayout layout;

    /// Number of signature vectors: sum over iterations of (|B(iN)| + k_i).
    std::size_t signature_vectors() const;
    friend bool operator==(const CompiledSeparator&, const CompiledSeparator&) = default;
};

using Signature = std::vector<FieldElement>;

/// N^r * M^(l-m), at least 1, or the override. Saturates instead of overflowing.
std::uint64_t degree_bound(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params);

/// Checks dimensions, fields and variable counts; throws ConfigError.
void check_specs(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params);

CompiledSeparator compile(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params,
                          const CompileOptions& options = CompileOptions::from_environment());

Signature evaluate(const CompiledSeparator& sep, std::span<const FieldElement> point);
bool separate(const CompiledSeparator& sep, std::span<const FieldElement> p, std::span<const FieldElement> q);

/// Ground truth for finite groups: q in {rho(g) p : g in elements}. Throws
/// ConfigError when an element does not lie on G.
bool orbit_oracle_finite(std::span<const std::vector<FieldElement>> elements, const GroupSpec& group,
                         const RepSpec& rep, std::span<const FieldElement> p, std::span<const FieldElement> q);

struct PhaseCensus {
    std::string name;
    Census census;
};

struct IterationStats {
    std::size_t iteration;
    IterationLayout layout;
    std::vector<PhaseCensus> phases;
    std::size_t length;
};

struct SeparatorStats {
    std::size_t total_length;
    Census census;
    std::uint64_t d_max;
    std::size_t signature_vectors;
    std::size_t signature_scalars;
    /// n^2 N^((l+m+1)(r+1)) M^((l-m)(l+m+1)), saturating.
    std::uint64_t count_bound;
    /// n^3 N^(3l(r+1)+r) M^((l-m)(3l+1)), saturating.
    std::uint64_t length_bound;
    std::vector<IterationStats> iterations;
    Census output_recall;
    /// Census summed by phase name across iterations.
    std::vector<PhaseCensus> by_phase;
};

SeparatorStats stats(const CompiledSeparator& sep);

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace orbitslp
