#pragma once

namespace heytica {

/// Selects the OpenMP kernel or the serial reference it is tested against.
enum class Exec { Serial, Parallel };

}  // namespace heytica
