#pragma once

#include "ramsey/class_spec.hpp"
#include "ramsey/error.hpp"
#include "ramsey/structure.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramsey {

/// A base structure embedded into two structures over the same signature.
struct AmalgamationDiagram
{
    Structure base;
    Structure first;
    Structure second;
    Embedding into_first;
    Embedding into_second;
};

/// Throws PreconditionError unless both maps are embeddings with the
/// stated endpoints.
AmalgamationDiagram make_diagram(Structure base, Structure first, Structure second, Embedding into_first,
                                 Embedding into_second);

struct Amalgam
{
    Structure structure;
    Embedding from_first;
    Embedding from_second;
};

/// from_first o into_first == from_second o into_second.
bool commutes(const AmalgamationDiagram & d, const Amalgam & m);

/// The images of first and second meet exactly in the image of base.
bool is_strong(const AmalgamationDiagram & d, const Amalgam & m);

/// Pushout: first's elements keep their numbers, second's elements outside
/// the base image are appended in increasing order. No relations beyond
/// the images of first's and second's.
Amalgam free_amalgam(const AmalgamationDiagram & d);

/// Every strong amalgam in `spec` on the free amalgam's domain, obtained by
/// adding tuples that meet both first-only and second-only elements.
/// Deduplicated up to isomorphisms that respect the base image pointwise
/// and the two sides setwise; deterministic order.
std::vector<Amalgam> find_strong_amalgams(const AmalgamationDiagram & d, const ClassSpec & spec);

std::optional<Amalgam> first_strong_amalgam(const AmalgamationDiagram & d, const ClassSpec & spec);

/// Any amalgam in `spec` with at most |first|+|second|-|base| elements,
/// allowing first-only and second-only elements to be identified. Strong
/// amalgams are tried first.
std::optional<Amalgam> first_amalgam(const AmalgamationDiagram & d, const ClassSpec & spec);

enum class AmalgamationProperty { amalgamation, strong_amalgamation, joint_embedding };

std::string property_name(AmalgamationProperty p);

struct AmalgamationCheck
{
    AmalgamationProperty property;
    std::size_t bound = 0;
    std::size_t diagrams_checked = 0;
    /// First failing diagram in enumeration order. Failures are relative to
    /// the size cap |first|+|second|-|base|; a larger amalgam may exist.
    std::optional<AmalgamationDiagram> counterexample;

    bool ok() const { return !counterexample.has_value(); }
};

/// Diagrams built from enumerate_members with |first|, |second| <= bound,
/// one per isomorphism type of diagram. `joint_only` restricts to the
/// empty base.
std::vector<AmalgamationDiagram> enumerate_diagrams(const ClassSpec & spec, std::size_t bound, bool joint_only);

AmalgamationCheck check_property(const ClassSpec & spec, AmalgamationProperty property, std::size_t bound,
                                 unsigned threads = 1);

AmalgamationCheck check_sap(const ClassSpec & spec, std::size_t bound, unsigned threads = 1);
AmalgamationCheck check_ap(const ClassSpec & spec, std::size_t bound, unsigned threads = 1);
AmalgamationCheck check_jep(const ClassSpec & spec, std::size_t bound, unsigned threads = 1);

/// Raised when a step needs a strong amalgam that the class does not
/// provide within the size cap.
class AmalgamationFailure : public PreconditionError
{
public:
    AmalgamationFailure(const std::string & what, AmalgamationDiagram diagram)
        : PreconditionError(what), diagram_(std::move(diagram))
    {
    }

    const AmalgamationDiagram & diagram() const noexcept { return diagram_; }

private:
    AmalgamationDiagram diagram_;
};

struct Injectivization
{
    Structure target;             ///< extends the input target; it is a prefix of the domain
    std::vector<Element> mapping; ///< injective homomorphism into `target`
    std::size_t steps = 0;
};

/// Turns a homomorphism `map`: source -> target into an injective one by
/// repeatedly cloning an identified point through two strong amalgams:
/// first two copies of the image over the image minus the point, then that
/// amalgam glued onto the current target over the image.
///
/// Requires injective relations in source and target, `map` a
/// homomorphism and target a member of `spec`. Throws PreconditionError
/// (AmalgamationFailure when no strong amalgam exists).
Injectivization injectivize(std::span<const Element> map, const Structure & source, const Structure & target,
                            const ClassSpec & spec);

} // namespace ramsey
