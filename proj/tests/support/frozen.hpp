#ifndef UAVCOV_TESTS_FROZEN_HPP
#define UAVCOV_TESTS_FROZEN_HPP

// Reference values computed independently in double precision (float64 Python, direct
// formula evaluation and dense brute-force grids). Degrees where the name says so.

namespace frozen {

// UAV at d_x = 250 m, h_x = 150 m, d1 = 1000 m
inline constexpr double kTheta1Deg = 30.96375653207352;
inline constexpr double kTheta2Deg = 11.309932474020215;
inline constexpr double kTheta3Deg = 6.84277341263094;

// crossing heights, beta = 40 deg
inline constexpr double kH3Alpha8 = 70.27041735119573;
inline constexpr double kH4Alpha8 = 124.75401989968185;
inline constexpr double kH3Alpha13 = 115.43409556278156;
inline constexpr double kH4Alpha13 = 196.65567653872947;

// borderlines, tau = 2 dB, d1 = 1000, h2 = 300
inline constexpr double kD2 = 442.68836623770727;
inline constexpr double kD3 = 421.6789577774297;
inline constexpr double kD4 = 114.6232675245855;
inline constexpr double kD5 = 125.08942705989476;
inline constexpr double kGamma1Deg = 85.99403894144206;
inline constexpr double kGamma2Deg = 88.00192113844666;

// corner heights, alpha = 13 deg, beta = 40 deg
inline constexpr double kHc3Alpha13 = 159.49430151277835;
inline constexpr double kHc4Alpha13 = 230.86819112556313;
inline constexpr double kHc5Alpha13 = 259.42051977047953;
inline constexpr double kHc6Alpha13 = 130.77998131733537;
inline constexpr double kHc3Alpha8 = 132.4333178199897;

// delta angles
inline constexpr double kDelta1AtH2Deg = 35.42963373945208;        // equals atan(h2 / d3)
inline constexpr double kDelta3H250Alpha13Deg = 108.33911340141249;

// link budget
inline constexpr double kFspl500m3GHzDb = 95.969608402997;
inline constexpr double kNoiseDbm = -91.98970004336019;
inline constexpr double kGain40Db = 7.44;
inline constexpr double kPLos90Deg = 0.9999999999999993;

// closed-form case expressions, beta = 40 deg
inline constexpr double kPinAlpha4 = 0.6152219082839436;  // case 1, without the BS-2 wedge
inline constexpr double kPinAlpha8 = 0.6385078647202749;
inline constexpr double kPinAlpha13 = 0.665718608865348;
inline constexpr double kPinAlpha17 = 0.6336433833474993;
inline constexpr double kPinAlpha25 = 0.5856473539919128;
inline constexpr double kPinAlpha35 = 0.46407952572439676;  // case 6

// case-1 BS-2 wedge fraction at alpha = 6 deg (2e6-point trapezoid)
inline constexpr double kWedgeAlpha6Beta30 = 0.012174296988164735;
inline constexpr double kWedgeAlpha6Beta40 = 0.009840901266719194;

// matched-assumption midpoint quadrature at 2001 x 2001
inline constexpr double kQuadPinAlpha13 = 0.6718687133195022;
inline constexpr double kQuadPinAlpha35 = 0.4640818021773721;

}  // namespace frozen

#endif  // UAVCOV_TESTS_FROZEN_HPP
