#include "hauar/error.hpp"
