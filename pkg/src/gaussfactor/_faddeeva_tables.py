"""Rational-approximation constants for the scaled complex error function w(z).

The table holds the Fourier coefficients of exp(-t^2)(L^2+t^2) under the
Moebius map t = L tan(theta/2), evaluated once at 50-digit precision. With 48
terms the rational form is accurate to ~1e-15 relative on |Re z| + Im z < 12;
outside that strip the Laplace continued fraction takes over.
"""

WEIDEMAN_L = 5.825901260487881

WEIDEMAN_COEFFS = (
    3.19406458939507117, 2.93044989562375649, 2.53704848744469066,
    2.07075997167429197, 1.59130846911780074, 1.14922046453977826,
    0.778062419148422893, 0.492257023913990728, 0.289799890796048303,
    0.157863304433804820, 0.0789558955347002302, 0.0358613699833767191,
    0.0145468377922375576, 0.00512581354822586356, 0.00148649912519563570,
    0.000307869136408866170, 0.0000175063163711463539, -0.0000190544616189843066,
    -9.47563824038513358e-6, -1.94456577893192627e-6, 1.94943374833222604e-7,
    2.65494920170899255e-7, 6.92700063588718912e-8, -6.38680995183491110e-9,
    -9.59625475269032700e-9, -2.01565997537472933e-9, 5.77528976557392894e-10,
    3.87942106688395315e-10, 2.16219776238647126e-11, -4.38658826625543954e-11,
    -1.19354943287593509e-11, 3.42542585184125293e-12, 2.21549047261860460e-12,
    -9.64327644643045518e-14, -3.22684830738347820e-13, -3.19394237431695782e-14,
    4.23431046969193819e-14, 9.60484048271172408e-15, -5.29794434517482636e-15,
    -1.94266486063821697e-15, 6.55448101819189196e-16, 3.48391245515957751e-16,
    -8.30426154989128723e-17, -5.98058230629468167e-17, 1.12397210467117185e-17,
    1.01436447680763844e-17, -1.70024147037099192e-18, -1.72299294247338098e-18,
)
