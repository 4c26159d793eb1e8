#pragma once

#include "aitlab/bignat.hpp"
#include "aitlab/bitstring.hpp"
#include "aitlab/busybeaver.hpp"
#include "aitlab/codes.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/depth.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/enumerate.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/selfcheck.hpp"
#include "aitlab/store.hpp"
