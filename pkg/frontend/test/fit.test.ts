import { describe, expect, it } from 'vitest';

import { logLogFit } from '../src/fit.js';
import { DESK_FIXTURE_INTERCEPT, DESK_FIXTURE_R2, DESK_FIXTURE_SLOPE } from './frozen.js';

describe('logLogFit', () => {
  it('recovers an exact power law', () => {
    const eps = [0.05, 0.1, 0.2, 0.4];
    const fit = logLogFit(eps, eps.map((e) => 3.7 * e * e));
    expect(Math.abs(fit.slope - 2)).toBeLessThan(1e-12);
    expect(Math.abs(fit.intercept - Math.log(3.7))).toBeLessThan(1e-12);
    expect(Math.abs(fit.r2 - 1)).toBeLessThan(1e-12);
  });

  it('matches the pipeline fit on the desk-scale fixture points', () => {
    const eps = [0.05, 0.1, 0.15, 0.2];
    const mse = [
      0.03314209871622117, 0.10680731838515495, 0.2987631773334911, 0.3017058216682507,
    ];
    const fit = logLogFit(eps, mse);
    expect(Math.abs(fit.slope - DESK_FIXTURE_SLOPE)).toBeLessThan(1e-9);
    expect(Math.abs(fit.intercept - DESK_FIXTURE_INTERCEPT)).toBeLessThan(1e-9);
    expect(Math.abs(fit.r2 - DESK_FIXTURE_R2)).toBeLessThan(1e-9);
  });

  it('fits the reference error ladder near slope 2', () => {
    const fit = logLogFit([0.05, 0.1, 0.15, 0.2], [0.0261, 0.1008, 0.1992, 0.3824]);
    expect(fit.slope).toBeGreaterThanOrEqual(1.9);
    expect(fit.slope).toBeLessThanOrEqual(2.0);
  });

  it('rejects degenerate inputs', () => {
    expect(() => logLogFit([0.1], [1])).toThrow(/at least 2/);
    expect(() => logLogFit([0.1, 0.2], [1, 0])).toThrow(/positive/);
  });
});
