#include "ehi/registry_detail.hpp"

namespace ehi {

const std::vector<IdentityEntry>& registry() {
    static const std::vector<IdentityEntry> entries = [] {
        std::vector<IdentityEntry> all;
        for (auto* part : {&detail::entries_integrals, &detail::entries_operators,
                           &detail::entries_biorth, &detail::entries_ii}) {
            auto v = (*part)();
            all.insert(all.end(), std::make_move_iterator(v.begin()),
                       std::make_move_iterator(v.end()));
        }
        return all;
    }();
    return entries;
}

} // namespace ehi
