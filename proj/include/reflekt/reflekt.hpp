#ifndef REFLEKT_REFLEKT_HPP
#define REFLEKT_REFLEKT_HPP

#include "reflekt/certify.hpp"
#include "reflekt/classical.hpp"
#include "reflekt/integer.hpp"
#include "reflekt/jacobi.hpp"
#include "reflekt/lattice.hpp"
#include "reflekt/laurent.hpp"
#include "reflekt/matrix.hpp"
#include "reflekt/niemeier.hpp"
#include "reflekt/qrseries.hpp"
#include "reflekt/shortvec.hpp"

#endif
