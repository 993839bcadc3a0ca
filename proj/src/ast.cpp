#include "pddleval/ast.hpp"

#include <ostream>

#include "pddleval/util.hpp"

namespace pddleval {

Ident Ident::make(std::string_view raw) {
    Ident id;
    id.text = util::to_lower(raw);
    return id;
}

std::ostream& operator<<(std::ostream& os, const Ident& id) { return os << id.text; }

const Ident& TypeHierarchy::object_type() {
    static const Ident object = Ident::make("object");
    return object;
}

bool TypeHierarchy::declare(Ident type, Ident parent) {
    if (type == object_type()) return false;
    auto [it, inserted] = parent_.emplace(type, parent);
    (void)it;
    if (inserted) declared_.emplace_back(std::move(type), std::move(parent));
    return inserted;
}

bool TypeHierarchy::contains(const Ident& type) const {
    return type == object_type() || parent_.count(type) > 0;
}

const Ident* TypeHierarchy::parent_of(const Ident& type) const {
    auto it = parent_.find(type);
    return it == parent_.end() ? nullptr : &it->second;
}

bool TypeHierarchy::is_subtype(const Ident& type, const Ident& ancestor) const {
    if (ancestor == object_type()) return true;
    const Ident* cur = &type;
    // Declarations are acyclic (the parser enforces this), so the walk is
    // bounded by the number of declared types.
    std::size_t steps = parent_.size() + 1;
    while (steps-- > 0) {
        if (*cur == ancestor) return true;
        auto it = parent_.find(*cur);
        if (it == parent_.end()) return false;
        cur = &it->second;
    }
    return false;
}

const PredicateDecl* DomainHeader::find_predicate(const Ident& pname) const {
    for (const PredicateDecl& p : predicates) {
        if (p.name == pname) return &p;
    }
    return nullptr;
}

const ActionDef* DomainFile::find_action(const Ident& aname) const {
    for (const ActionDef& a : actions) {
        if (a.name == aname) return &a;
    }
    return nullptr;
}

}  // namespace pddleval
