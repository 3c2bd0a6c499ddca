#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "skw/ahseries.hpp"
#include "skw/linalg.hpp"
#include "skw/localfield.hpp"
#include "skw/series.hpp"
#include "skw/weights.hpp"

namespace skw {

// An element of L^x ⊗ E in Artin-Hasse presentation: the class of
// varpi^{varpi_exp} * E^AH(ah_arg)(varpi). Coefficients of ah_arg above
// v^{p e_L/(p-1)} are irrelevant to the class but are kept for pairing
// evaluation.
struct UnitClass {
    FieldElem varpi_exp; // in E
    TensorSeries ah_arg; // over l ⊗ E, min_support >= 1
};

enum class BasisKind { Varpi, Unit, Cyc };

struct BasisElement {
    BasisKind kind;
    int64_t level;   // v-exponent (0 for varpi)
    FieldElem theta; // l-element ([t^j] for Unit, the trace-nonzero b for Cyc)
    UnitClass cls;
};

struct ContextParams {
    uint32_t p = 3, f = 1;
    uint32_t field_mult = 1;   // [E : l] multiplier
    int64_t prec_bump = 0;     // extra working v-precision
    uint32_t root_variant = 0; // which deterministic primitive p-th root
};

// Shared per-(p, f) environment for the reciprocity pipeline (K/Q_p
// unramified, pi = p). Immutable after construction; safe to share across
// threads.
class Context {
public:
    explicit Context(const ContextParams& prm);

    const ContextParams& params() const { return prm_; }
    const FieldSpec* k;
    const FieldSpec* l;
    const FieldSpec* E;
    TensorRing lring, kring;
    Embedding k_to_l;
    WeightParams wp; // (p, f, e = 1, E)

    uint32_t p() const { return prm_.p; }
    uint32_t f() const { return prm_.f; }
    uint32_t eL() const { return eL_; }
    int64_t Vz() const { return Vz_; } // v-valuation of z^p - 1
    int64_t work_prec() const { return work_prec_; }

    const TensorSeries& zbar() const { return zbar_; }
    const TensorSeries& zp1() const { return zp1_; }
    const TensorSeries& zp1_inv() const { return zp1_inv_; }

    // chi_cyc with its unramified part extracted from the fixed root of unity
    const CharData& cyclotomic_char() const { return cyc_char_; }
    FieldElem lambda_cyc() const { return cyc_char_.lambda; }

    // ----- classes ---------------------------------------------------------

    UnitClass zero_class() const;
    UnitClass varpi_class() const;
    UnitClass unit_class(const TensorSeries& ah_arg) const; // varpi_exp = 0
    UnitClass class_add(const UnitClass& a, const UnitClass& b) const;
    UnitClass class_scale(const UnitClass& a, const FieldElem& s) const;

    // Psi_0: split off the constant term through the trace surjection
    // l -> F_p, send it to the varpi direction, keep the positive part.
    UnitClass psi0_class(const TensorSeries& x) const;
    // Psi(h) = Psi_0(h (z^p - 1)); requires min_support(h) >= -e_L p/(p-1).
    UnitClass psi_class(const TensorSeries& h) const;

    UnitClass gal_act_class(const GalElem& g, const UnitClass& a) const;

    // The class of a principal unit of O_L (Artin-Hasse digit peeling).
    UnitClass class_of_principal_unit(const OLElem& u, const OLRing& OL) const;

    // ----- pairing ---------------------------------------------------------

    // Vostokov residue formula mod p, E-bilinear; c(A, B) = f_B(A).
    FieldElem pair(const UnitClass& A, const UnitClass& B) const;

    const std::vector<BasisElement>& basis() const { return basis_; }
    size_t basis_size() const { return basis_.size(); }
    const Matrix& gram() const { return gram_; }
    const Matrix& gram_inverse() const { return gram_inv_; }

    std::vector<FieldElem> pairing_vector(const UnitClass& a) const;
    std::vector<FieldElem> coordinates(const UnitClass& a) const;
    // c(u, alpha) from coordinates: coords(u)^T G coords(alpha)
    FieldElem pair_coords(const std::vector<FieldElem>& cu,
                          const std::vector<FieldElem>& ca) const;

    // ----- Galois action in coordinates -------------------------------------

    // Matrix of g on the basis classes (entries lie in F_p); closed form,
    // validated at construction against the series-level action.
    const std::vector<std::vector<uint8_t>>& gal_matrix(const GalElem& g) const;
    std::vector<FieldElem> gal_apply(const GalElem& g, const std::vector<FieldElem>& coords) const;
    const std::vector<GalElem>& gal_elements() const { return gal_elements_; }

    // eigenspace projector applied to a coordinate vector: the average of
    // eta(g)^{-1} g over the group
    std::vector<FieldElem> project_eigen(const CharData& eta,
                                         const std::vector<FieldElem>& coords) const;
    // eta-eigenvector test: g coords = eta(g) coords for the two generators
    bool is_eigenvector(const CharData& eta, const std::vector<FieldElem>& coords) const;

    // value of chi at g, with chi's unramified part evaluated at s
    FieldElem char_at(const CharData& chi, const GalElem& g) const;

    // mu_{p^f-1}(E): the possible unramified-part values on Gal(L/K)
    const std::vector<FieldElem>& unramified_values() const { return unram_values_; }

    const std::vector<Embedding>& k_embs() const { return kring.emb; }

private:
    ContextParams prm_;
    uint32_t eL_;
    int64_t Vz_, work_prec_, z_prec_;
    TensorSeries zbar_, zp1_, zp1_inv_;
    CharData cyc_char_;
    std::vector<BasisElement> basis_;
    Matrix gram_, gram_inv_;
    std::vector<GalElem> gal_elements_;
    mutable std::vector<std::vector<std::vector<uint8_t>>> gal_mats_; // by group index
    std::vector<FieldElem> unram_values_;
    std::vector<FieldElem> l_power_basis_; // t^j
    FieldElem cyc_theta_;                  // the trace-nonzero top-level digit
    uint32_t trace_cyc_theta_;

    void build_basis();
    void build_gal_matrices();
    size_t gal_index(const GalElem& g) const;
    uint32_t inv_mod_p(uint32_t a) const;
};

} // namespace skw
