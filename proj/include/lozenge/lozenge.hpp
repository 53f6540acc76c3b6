#pragma once

#include "asymptotics.hpp"
#include "count.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "io.hpp"
#include "kasteleyn.hpp"
#include "kernel.hpp"
#include "lozenges.hpp"
#include "polygon.hpp"
#include "residue.hpp"
#include "sampler.hpp"
#include "svg.hpp"
