#ifndef DINV_ASSETS_H_
#define DINV_ASSETS_H_

#include <string_view>

// Text assets compiled into the library; the same files are installed under
// share/dinv.
namespace dinv::assets {
extern const std::string_view k_catalog;
extern const std::string_view k_relations;
extern const std::string_view k_reference_forms;
extern const std::string_view k_sets;
}  // namespace dinv::assets

#endif  // DINV_ASSETS_H_
