// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_CMSURF_HPP
#define CMSURF_CMSURF_HPP

#include "cmsurf/integer.hpp"
#include "cmsurf/numtheory.hpp"
#include "cmsurf/forms.hpp"
#include "cmsurf/classgroup.hpp"
#include "cmsurf/kmodules.hpp"
#include "cmsurf/lattice.hpp"
#include "cmsurf/periods.hpp"
#include "cmsurf/gcomp.hpp"
#include "cmsurf/decomposer.hpp"
#include "cmsurf/shioda_inose.hpp"

#endif // CMSURF_CMSURF_HPP
