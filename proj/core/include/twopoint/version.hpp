#ifndef TWOPOINT_VERSION_HPP
#define TWOPOINT_VERSION_HPP

#define TWOPOINT_VERSION "0.1.0"

#endif  // TWOPOINT_VERSION_HPP
