#include "ehi/registry_detail.hpp"
namespace ehi::detail {
std::vector<IdentityEntry> entries_integrals() { return {}; }
std::vector<IdentityEntry> entries_operators() { return {}; }
std::vector<IdentityEntry> entries_biorth() { return {}; }
std::vector<IdentityEntry> entries_ii() { return {}; }
}
