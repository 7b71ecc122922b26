#pragma once

#include "intval/integer.hpp"
#include "intval/polynomial.hpp"
#include "intval/text.hpp"
#include "intval/qx_factor.hpp"
#include "intval/subsets.hpp"
#include "intval/ring.hpp"
#include "intval/constructions.hpp"
#include "intval/certificate.hpp"
#include "intval/blockmonoid.hpp"
