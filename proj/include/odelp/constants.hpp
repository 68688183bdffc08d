#pragma once

namespace odelp {

/// Root of a^a = e (equivalently a·ln a = 1) in (1, 2), accurate to full
/// double precision. Computed once by Newton iteration and cached.
double constant_a();

}  // namespace odelp
