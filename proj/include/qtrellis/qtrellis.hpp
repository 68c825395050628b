#pragma once

#include "qtrellis/pauli.hpp"
#include "qtrellis/gf2.hpp"
#include "qtrellis/code.hpp"
#include "qtrellis/builtin_codes.hpp"
#include "qtrellis/trellis.hpp"
#include "qtrellis/construct.hpp"
#include "qtrellis/trellis_io.hpp"
#include "qtrellis/channel.hpp"
#include "qtrellis/decoder.hpp"
#include "qtrellis/oracle.hpp"
#include "qtrellis/sim.hpp"
