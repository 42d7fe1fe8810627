#pragma once

#include <set>
#include <string>
#include <vector>

#include "mutt/signature.hpp"
#include "mutt/syntax.hpp"

namespace mutt {

bool is_keyword(const std::string& s);
bool is_identifier(const std::string& s);

// Distinct, parseable display names for a context, in context order.
std::vector<std::string> context_names(const Context& ctx,
                                       const std::set<std::string>& reserved = {});

// Surface syntax. `names` are the context names in context order (the last one
// is Var 0). Binders always carry their sort and level so the output
// re-elaborates to the identical term.
std::string print_term(const TermP& t, const std::vector<std::string>& names = {});
std::string print_term(const TermP& t, const std::vector<std::string>& names,
                       const std::set<std::string>& reserved);

// "(x : A @ s # i) (y : ...)"; `names` is extended with the binders.
std::string print_telescope(const Context& tel, std::vector<std::string>& names,
                            const std::set<std::string>& reserved);

std::string print_rule(const RewriteRule& r, const Signature& sig);
std::string print_entry(const SignatureEntry& e, const Signature& sig);
std::string print_sort(const SortInfo& s);
std::string print_parametrization(const Parametrization& p);

// Every constant name mentioned by t.
void collect_constants(const TermP& t, std::set<std::string>& out);

}  // namespace mutt
