#include "star/common.hpp"

namespace star {

std::string_view to_string(StorageKind kind) {
  switch (kind) {
    case StorageKind::Register: return "register";
    case StorageKind::Fifo: return "fifo";
    case StorageKind::Lifo: return "lifo";
  }
  return "?";
}

StorageKind parse_storage_kind(std::string_view text) {
  if (text == "register") return StorageKind::Register;
  if (text == "fifo") return StorageKind::Fifo;
  if (text == "lifo") return StorageKind::Lifo;
  throw InputError("unknown storage kind '" + std::string(text) + "'");
}

}  // namespace star
