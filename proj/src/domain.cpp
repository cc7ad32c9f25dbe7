#include "analogy/domain.hpp"

#include <algorithm>

namespace analogy {

std::string_view to_string(PredicateKind kind)
{
    switch (kind) {
    case PredicateKind::attribute: return "attribute";
    case PredicateKind::function: return "function";
    case PredicateKind::relation: return "relation";
    }
    return "relation";
}

UnknownElement::UnknownElement(ElementId id)
    : std::out_of_range("unknown element id " + std::to_string(id))
{
}

const Element& Domain::element(ElementId id) const
{
    if (!contains(id))
        throw UnknownElement(id);
    return elements_[static_cast<std::size_t>(id)];
}

const PredicateDecl& Domain::predicate_of(ElementId id) const
{
    const Element& e = element(id);
    if (e.is_entity())
        throw std::invalid_argument("element " + std::to_string(id) + " is an entity");
    return decls_[static_cast<std::size_t>(e.predicate)];
}

const PredicateDecl* Domain::find_declaration(std::string_view name) const
{
    auto it = decl_index_.find(name);
    return it == decl_index_.end() ? nullptr : &decls_[static_cast<std::size_t>(it->second)];
}

std::string Domain::render(ElementId id) const
{
    const Element& e = element(id);
    if (e.is_entity())
        return e.name;
    std::string out = e.name + "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i)
            out += ", ";
        out += render(e.args[i]);
    }
    out += ")";
    return out;
}

int level_of(const Domain& domain, ElementId id)
{
    return domain.element(id).level;
}

int freq_of(const Domain& domain, ElementId id)
{
    return domain.element(id).freq;
}

std::vector<ElementId> roots_of(const Domain& domain)
{
    std::vector<ElementId> roots;
    for (ElementId f : domain.facts())
        if (domain.element(f).is_root)
            roots.push_back(f);
    return roots;
}

std::vector<ElementId> closure_of(const Domain& domain, ElementId id)
{
    std::vector<char> seen(domain.size(), 0);
    std::vector<ElementId> stack{id};
    std::vector<ElementId> out;
    domain.element(id);
    while (!stack.empty()) {
        ElementId cur = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(cur)])
            continue;
        seen[static_cast<std::size_t>(cur)] = 1;
        out.push_back(cur);
        for (ElementId a : domain.elements()[static_cast<std::size_t>(cur)].args)
            stack.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DomainBuilder::DomainBuilder(std::string name)
{
    domain_.name_ = std::move(name);
}

void DomainBuilder::declare(PredicateDecl decl)
{
    if (decl.arity < 1)
        throw std::invalid_argument("predicate '" + decl.name + "' must have positive arity");
    if (decl.kind == PredicateKind::attribute && decl.arity != 1)
        throw std::invalid_argument("attribute '" + decl.name + "' must have arity 1");
    if (domain_.decl_index_.contains(decl.name) || entity_index_.contains(decl.name))
        throw std::invalid_argument("duplicate name '" + decl.name + "'");
    domain_.decl_index_.emplace(decl.name, static_cast<int>(domain_.decls_.size()));
    domain_.decls_.push_back(std::move(decl));
}

bool DomainBuilder::has_entity(std::string_view name) const
{
    return entity_index_.find(name) != entity_index_.end();
}

ElementId DomainBuilder::entity(std::string_view name)
{
    if (auto it = entity_index_.find(name); it != entity_index_.end())
        return it->second;
    if (domain_.decl_index_.find(name) != domain_.decl_index_.end())
        throw std::invalid_argument("entity '" + std::string(name) + "' clashes with a predicate name");
    Element e;
    e.id = static_cast<ElementId>(domain_.elements_.size());
    e.name = std::string(name);
    domain_.elements_.push_back(e);
    domain_.entities_.push_back(e.id);
    entity_index_.emplace(std::string(name), e.id);
    return e.id;
}

ElementId DomainBuilder::expression(std::string_view predicate, std::span<const ElementId> args)
{
    auto it = domain_.decl_index_.find(predicate);
    if (it == domain_.decl_index_.end())
        throw std::invalid_argument("undeclared predicate '" + std::string(predicate) + "'");
    const PredicateDecl& decl = domain_.decls_[static_cast<std::size_t>(it->second)];
    if (static_cast<int>(args.size()) != decl.arity)
        throw std::invalid_argument("predicate '" + decl.name + "' expects " + std::to_string(decl.arity) +
                                    " arguments, got " + std::to_string(args.size()));
    int level = 0;
    for (ElementId a : args) {
        const Element& arg = domain_.element(a);
        if (decl.kind == PredicateKind::attribute && !arg.is_entity())
            throw std::invalid_argument("attribute '" + decl.name + "' takes entity arguments only");
        if (decl.kind == PredicateKind::function && !arg.is_entity() &&
            domain_.decls_[static_cast<std::size_t>(arg.predicate)].kind != PredicateKind::function)
            throw std::invalid_argument("function '" + decl.name + "' takes entities or function terms only");
        level = std::max(level, arg.level);
    }

    std::vector<ElementId> key_args(args.begin(), args.end());
    auto key = std::make_pair(it->second, key_args);
    if (auto found = expr_index_.find(key); found != expr_index_.end())
        return found->second;

    Element e;
    e.id = static_cast<ElementId>(domain_.elements_.size());
    e.name = decl.name;
    e.predicate = it->second;
    e.args = std::move(key_args);
    e.level = level + 1;
    domain_.elements_.push_back(e);
    expr_index_.emplace(std::move(key), e.id);
    return e.id;
}

void DomainBuilder::fact(ElementId id)
{
    if (domain_.element(id).is_entity())
        throw std::invalid_argument("a fact must be an expression");
    if (std::find(domain_.facts_.begin(), domain_.facts_.end(), id) == domain_.facts_.end())
        domain_.facts_.push_back(id);
}

Domain DomainBuilder::build() &&
{
    auto& elems = domain_.elements_;
    std::vector<char> is_arg(elems.size(), 0);
    for (const Element& e : elems)
        for (ElementId a : e.args)
            is_arg[static_cast<std::size_t>(a)] = 1;

    for (Element& e : elems) {
        e.freq = 0;
        e.is_root = false;
    }
    for (ElementId f : domain_.facts_) {
        elems[static_cast<std::size_t>(f)].is_root = !is_arg[static_cast<std::size_t>(f)];
        for (ElementId c : closure_of(domain_, f))
            ++elems[static_cast<std::size_t>(c)].freq;
    }
    return std::move(domain_);
}

}  // namespace analogy
