from resurgamma.verify import digits_agree


def assert_close(actual, expected, rel, msg=''):
    '''|actual - expected| <= rel |expected|; expected may be zero, then the check is absolute.'''
    nstr = actual.context.nstr
    scale = abs(expected) if expected else 1
    error = abs(actual - expected) / scale
    assert error <= rel, f'{msg} {nstr(actual, 20)} != {nstr(expected, 20)} (relative error {nstr(error, 3)})'


def assert_digits(context, actual, mantissa, exponent, digits):
    ok = digits_agree(context, actual, mantissa, exponent, digits)
    assert ok, f'{context.mp.nstr(actual, digits + 3)} does not match {mantissa}e{exponent} to {digits} digits'
