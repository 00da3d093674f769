#pragma once

#include "heytica/brute.hpp"
