#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace analogy {

using ElementId = std::int32_t;

enum class PredicateKind { attribute, function, relation };

std::string_view to_string(PredicateKind kind);

struct PredicateDecl {
    std::string name;
    PredicateKind kind = PredicateKind::relation;
    int arity = 1;

    friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

/// One node of a domain's expression forest: either an entity or a
/// predicate applied to an ordered list of argument elements.
struct Element {
    ElementId id = 0;
    std::string name;              // entity name, or predicate name for expressions
    int predicate = -1;            // index into Domain::declarations(), -1 for entities
    std::vector<ElementId> args;
    int level = 0;
    int freq = 0;
    bool is_root = false;

    bool is_entity() const { return predicate < 0; }
};

class UnknownElement : public std::out_of_range {
public:
    explicit UnknownElement(ElementId id);
};

/// Immutable description of one side of an analogy.
///
/// Expressions are structurally deduplicated: the same predicate applied to
/// the same argument ids is a single element. Ids are dense, assigned in
/// construction order, and arguments always carry smaller ids than their
/// parents. Build instances with DomainBuilder.
class Domain {
public:
    Domain() = default;

    const std::string& name() const { return name_; }
    std::span<const PredicateDecl> declarations() const { return decls_; }
    std::span<const Element> elements() const { return elements_; }
    std::span<const ElementId> entities() const { return entities_; }
    /// Top-level facts in declaration order, duplicates removed.
    std::span<const ElementId> facts() const { return facts_; }

    std::size_t size() const { return elements_.size(); }
    bool contains(ElementId id) const { return id >= 0 && static_cast<std::size_t>(id) < elements_.size(); }
    const Element& element(ElementId id) const;
    const PredicateDecl& predicate_of(ElementId id) const;
    const PredicateDecl* find_declaration(std::string_view name) const;

    /// Term text such as `pressure(beaker)`.
    std::string render(ElementId id) const;

private:
    friend class DomainBuilder;

    std::string name_;
    std::vector<PredicateDecl> decls_;
    std::map<std::string, int, std::less<>> decl_index_;
    std::vector<Element> elements_;
    std::vector<ElementId> entities_;
    std::vector<ElementId> facts_;
};

int level_of(const Domain& domain, ElementId id);
int freq_of(const Domain& domain, ElementId id);
/// Facts that are no expression's argument, in declaration order.
std::vector<ElementId> roots_of(const Domain& domain);

/// Downward closure of `id` (the element plus all transitive arguments),
/// sorted ascending.
std::vector<ElementId> closure_of(const Domain& domain, ElementId id);

/// Incremental constructor for Domain. Enforces declaration, arity and
/// argument-kind rules; violations throw std::invalid_argument.
class DomainBuilder {
public:
    explicit DomainBuilder(std::string name);

    void declare(PredicateDecl decl);
    ElementId entity(std::string_view name);
    bool has_entity(std::string_view name) const;
    ElementId expression(std::string_view predicate, std::span<const ElementId> args);
    ElementId expression(std::string_view predicate, std::initializer_list<ElementId> args)
    {
        return expression(predicate, std::span<const ElementId>(args.begin(), args.size()));
    }
    void fact(ElementId id);

    /// Computes level, freq and root flags and hands over the domain.
    Domain build() &&;

private:
    Domain domain_;
    std::map<std::string, ElementId, std::less<>> entity_index_;
    std::map<std::pair<int, std::vector<ElementId>>, ElementId> expr_index_;
};

}  // namespace analogy
