#ifndef MMTHZ_MMTHZ_HPP
#define MMTHZ_MMTHZ_HPP

#include "mmthz/atmosphere.hpp"
#include "mmthz/channel.hpp"
#include "mmthz/config.hpp"
#include "mmthz/itu_lines.hpp"
#include "mmthz/linkbudget.hpp"
#include "mmthz/noise.hpp"
#include "mmthz/report.hpp"
#include "mmthz/txchain.hpp"
#include "mmthz/units.hpp"

#endif  // MMTHZ_MMTHZ_HPP
