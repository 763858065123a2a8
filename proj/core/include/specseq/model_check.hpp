#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/filtered.hpp"
#include "specseq/random.hpp"
#include "specseq/report.hpp"

namespace specseq {

enum class Flavor { filtered, bicomplex };

std::string to_string(Flavor f);

/// Indexing set S of a model structure; r = max S is the page of the weak
/// equivalences. The bicomplex flavor needs 0 in S.
class SSet {
public:
    SSet(std::set<int> elements, Flavor flavor);

    const std::set<int>& elements() const { return elements_; }
    Flavor flavor() const { return flavor_; }
    int r() const { return *elements_.rbegin(); }
    bool contains(int s) const { return elements_.count(s) > 0; }
    /// "{0,2,3}".
    std::string to_string() const;

private:
    std::set<int> elements_;
    Flavor flavor_;
};

/// Where a fibration test failed: the page index s and the bidegree.
struct FibrationFailure {
    int s = 0;
    Bidegree at;
};

std::optional<FibrationFailure> fibration_failure(const ChainMap& f, const SSet& s);
std::optional<FibrationFailure> fibration_failure(const BiMap& f, const SSet& s);
/// Z_s-surjective (ZW_s for bicomplexes) for every s in S. Throws
/// PreconditionError on a flavor mismatch.
bool is_fibration(const ChainMap& f, const SSet& s);
bool is_fibration(const BiMap& f, const SSet& s);
/// A fibration that is also a (max S)-weak equivalence.
bool is_acyclic_fibration(const ChainMap& f, const SSet& s);
bool is_acyclic_fibration(const BiMap& f, const SSet& s);

/// Finite range of generator indices (p, n).
struct IndexWindow {
    int p_lo = 0, p_hi = 0;
    int n_lo = 0, n_hi = 0;
    std::size_t size() const;
};

template <class Map>
struct Generator {
    /// "phi" for the I_r family, "zero" for 0 -> Z_s.
    std::string family;
    int s = 0;
    int p = 0, n = 0;
    Map map;
};

template <class Map>
struct GeneratingSets {
    std::vector<Generator<Map>> i;  // I_r and every J_s
    std::vector<Generator<Map>> j;  // J_s, s in S
};

GeneratingSets<ChainMap> filtered_generating_sets(Field field, const SSet& s, const IndexWindow& w);
/// The J_s families include 0 -> ZW_0(p, p+n) as well.
GeneratingSets<BiMap> bicomplex_generating_sets(Field field, const SSet& s, const IndexWindow& w);

/// Lift of y : Z_s(p, n) -> Y through q : X -> Y, built from a preimage of
/// the classified s-cycle; nullopt when there is none.
std::optional<ChainMap> lift_cycle(const ChainMap& q, const ChainMap& y, int s, int p, int n);
/// The same for y : ZW_s(p, q) -> Y with witness cycles.
std::optional<BiMap> lift_witness(const BiMap& q, const BiMap& y, int s, int p, int qq);

/// Direct sum of gamma_s(p, n) over the window.
ChainMap assembled_gamma(Field field, int s, const IndexWindow& w);

struct SeparationReport {
    int s = 0;
    IndexWindow window;
    int k_max = 0;
    std::vector<int> surjective;      // k in [0, k_max] with Z_k(gamma) onto
    std::vector<int> not_surjective;  // the rest
    bool pass() const { return not_surjective == std::vector<int>{s}; }
};
SeparationReport check_separation(Field field, int s, const IndexWindow& w, int k_max);

struct StabilityReport {
    Flavor flavor = Flavor::filtered;
    int r = 0;
    std::vector<Check> checks;
    bool pass() const { return all_pass(checks); }
};
/// The pullback of pi_1 : Omega^r C_r(id_A) -> A along 0 -> A, with an
/// explicit filtered isomorphism to Omega^r A.
StabilityReport stability_check_filtered(const FilteredComplex& a, int r);
/// The pullback of Omega^r psi_r along 0 -> A: equal to Omega^r A for r = 0,
/// and to Omega^r(NW_r tensor A) for r >= 1, where omega_i_inclusion must
/// be a 1-weak equivalence.
StabilityReport stability_check_bicomplex(const Bicomplex& a, int r);

struct PropernessReport {
    Flavor flavor = Flavor::filtered;
    int r = 0;
    int p = 0, n = 0;
    std::vector<Check> checks;
    bool pass() const { return all_pass(checks); }
};
/// Double pushout of pi : A -> B along phi_{r+1}(p, n) attached by
/// g : Z_{r+1}(p, n) -> A. Throws PreconditionError unless pi is an
/// S-acyclic fibration. Checks, in order: Z_s-surjectivity of pi' for
/// s in S, Z_{r+1}-surjectivity, ker pi = ker pi', injectivity of
/// E_{r+1}(pi') and that pi' is an S-acyclic fibration.
PropernessReport properness_harness(const ChainMap& pi, const SSet& s, const ChainMap& g, int p, int n);
/// Bicomplex version with g : ZW_{r+1}(p, p+n) -> A.
PropernessReport properness_harness(const BiMap& pi, const SSet& s, const BiMap& g, int p, int n);

/// Random S-acyclic fibrations. kind 0: (id_X, h pi_1) : X + Omega^r C -> X
/// with pi_1 the cone fibration of a random A and h random; kind 1: the
/// cone fibration of an r-acyclic base. Both are scrambled by random isos.
ChainMap random_acyclic_fibration(Rng& rng, Field field, int r, int kind);
/// The same with Omega^r psi_r in place of pi_1.
BiMap random_acyclic_bifibration(Rng& rng, Field field, int r, int kind);

}  // namespace specseq
