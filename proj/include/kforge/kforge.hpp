#ifndef KFORGE_KFORGE_HPP
#define KFORGE_KFORGE_HPP

#include "kforge/difftools.hpp"
#include "kforge/error.hpp"
#include "kforge/factor.hpp"
#include "kforge/gcd.hpp"
#include "kforge/groebner.hpp"
#include "kforge/io.hpp"
#include "kforge/poly.hpp"
#include "kforge/text.hpp"
#include "kforge/theorem.hpp"

#endif // KFORGE_KFORGE_HPP
