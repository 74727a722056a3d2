#pragma once

#include "sigcurve/affine2.hpp"
#include "sigcurve/csv.hpp"
#include "sigcurve/curves.hpp"
#include "sigcurve/error.hpp"
#include "sigcurve/euclid2.hpp"
#include "sigcurve/euclid3.hpp"
#include "sigcurve/format.hpp"
#include "sigcurve/geom.hpp"
#include "sigcurve/harness.hpp"
#include "sigcurve/oracle.hpp"
#include "sigcurve/partition.hpp"
#include "sigcurve/polycurve.hpp"
#include "sigcurve/random.hpp"
#include "sigcurve/stencil.hpp"
#include "sigcurve/svg.hpp"
