#pragma once

#include "drinfeld/errors.hpp"
#include "drinfeld/fp_linalg.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/matrix.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/ring.hpp"
#include "drinfeld/skew_poly.hpp"
#include "drinfeld/fields.hpp"
#include "drinfeld/shtuka.hpp"
#include "drinfeld/smith.hpp"
#include "drinfeld/tmodule.hpp"
#include "drinfeld/tmotive.hpp"
#include "drinfeld/torsion.hpp"
#include "drinfeld/isogeny.hpp"
#include "drinfeld/local_shtuka.hpp"
