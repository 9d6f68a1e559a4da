//! Taylor coefficients (about p = 1/2) of the Riemann-Siegel correction
//! functions C0..C4, where the remainder after the main sum is
//!   (-1)^(N-1) * (t/2pi)^(-1/4) * sum_j C_j(p) * (t/2pi)^(-j/2),
//!   p = frac(sqrt(t/2pi)).
//! C0(p) = Psi(p) = cos(2pi(p^2 - p - 1/16))/cos(2pi p); higher terms are the
//! classical combinations of Psi derivatives. Series generated at 60-digit
//! working precision; truncated so the tail on p in [0,1] is below 1e-19.

pub(crate) const C0: [f64; 43] = [
    0.38268343236508977,
    0.0,
    1.7489618723100818,
    0.0,
    2.1180252076854964,
    0.0,
    -0.87072166705114807,
    0.0,
    -3.4733112243465167,
    0.0,
    -1.6626947308999324,
    0.0,
    1.2167312889192321,
    0.0,
    1.3014304161007976,
    0.0,
    0.030511021827361672,
    0.0,
    -0.37558030515450952,
    0.0,
    -0.10857844165640660,
    0.0,
    0.051832902999549623,
    0.0,
    0.029999480619902276,
    0.0,
    -0.0022759396706125642,
    0.0,
    -0.0043826474165803383,
    0.0,
    -0.00040642301837298470,
    0.0,
    0.00040060977854221139,
    0.0,
    8.9710579913888413e-5,
    0.0,
    -2.3025650027239107e-5,
    0.0,
    -9.3800066019067925e-6,
    0.0,
    6.3235149476091075e-7,
    0.0,
    6.5510228192315017e-7,
];

pub(crate) const C1: [f64; 44] = [
    0.0,
    -0.053650205256750694,
    0.0,
    0.11027818741081482,
    0.0,
    1.2317200154315226,
    0.0,
    1.2634964862799458,
    0.0,
    -1.6951089975595030,
    0.0,
    -2.9998711967650101,
    0.0,
    -0.10819944959899209,
    0.0,
    1.9407662946212713,
    0.0,
    0.78384235615006865,
    0.0,
    -0.50548296679003659,
    0.0,
    -0.38450723496057974,
    0.0,
    0.037472646465315321,
    0.0,
    0.090920266109731763,
    0.0,
    0.010449237550064509,
    0.0,
    -0.012582979651583416,
    0.0,
    -0.0033995037211512741,
    0.0,
    0.0010410950537714891,
    0.0,
    0.00050109490511184869,
    0.0,
    -3.9563596690031816e-5,
    0.0,
    -4.7624592453571896e-5,
    0.0,
    -1.8539355338085132e-6,
    0.0,
    3.1936918080068972e-6,
];

pub(crate) const C2: [f64; 45] = [
    0.0051885428302931685,
    0.0,
    0.0012378633552253898,
    0.0,
    -0.18137505725166997,
    0.0,
    0.14291492748532127,
    0.0,
    1.3303391766687565,
    0.0,
    0.35224723534037337,
    0.0,
    -2.4210015958919507,
    0.0,
    -1.6760787022538109,
    0.0,
    1.3689416723328372,
    0.0,
    1.5539019430222983,
    0.0,
    -0.17221642734729981,
    0.0,
    -0.63590680550454310,
    0.0,
    -0.099116498730412081,
    0.0,
    0.14033480067387009,
    0.0,
    0.047823520198272922,
    0.0,
    -0.017356040641479781,
    0.0,
    -0.010225012534028592,
    0.0,
    0.00092741491597948879,
    0.0,
    0.0013572194372373385,
    0.0,
    6.4136901202938801e-5,
    0.0,
    -0.00012300805698196630,
    0.0,
    -1.8313507404789203e-5,
    0.0,
    7.8216286043226273e-6,
];

pub(crate) const C3: [f64; 46] = [
    0.0,
    -0.0026794321814389138,
    0.0,
    0.029953721091035150,
    0.0,
    -0.042570172541828698,
    0.0,
    -0.28997965779803888,
    0.0,
    0.48888319992354460,
    0.0,
    1.2308558763957461,
    0.0,
    -0.82975607085274087,
    0.0,
    -2.2497635366665669,
    0.0,
    0.078451399610054714,
    0.0,
    1.7467492800868894,
    0.0,
    0.45968080979749935,
    0.0,
    -0.66193534710397749,
    0.0,
    -0.31590441036173635,
    0.0,
    0.12844792545207496,
    0.0,
    0.10073382716626152,
    0.0,
    -0.0095301838488252678,
    0.0,
    -0.019264421687514089,
    0.0,
    -0.0012464637158769292,
    0.0,
    0.0024243969641103086,
    0.0,
    0.00043764769774185702,
    0.0,
    -0.00020714032687001791,
    0.0,
    -6.2743445041865156e-5,
    0.0,
    1.1575343814595669e-5,
];

pub(crate) const C4: [f64; 47] = [
    0.00046483389361763382,
    0.0,
    -0.0040226429461361883,
    0.0,
    0.0038471770517961269,
    0.0,
    0.065811751358094860,
    0.0,
    -0.19604124343694449,
    0.0,
    -0.20854053686358853,
    0.0,
    0.95077541851417509,
    0.0,
    0.53415353129148740,
    0.0,
    -1.6763494411763401,
    0.0,
    -1.0767471578751290,
    0.0,
    1.2353393016565970,
    0.0,
    1.0257825340057276,
    0.0,
    -0.40124095793988544,
    0.0,
    -0.50366639951083034,
    0.0,
    0.035734877955027450,
    0.0,
    0.14431763086785417,
    0.0,
    0.015091527417903469,
    0.0,
    -0.026098874779194361,
    0.0,
    -0.0061266283795192617,
    0.0,
    0.0030775031298708412,
    0.0,
    0.0011562478934088752,
    0.0,
    -0.00022775966758472128,
    0.0,
    -0.00014189637118181446,
    0.0,
    7.4648603079556195e-6,
];

