import { writeFileSync } from 'fs';

import { columnIndex, numericColumn, readCsv } from './csv.js';
import { logLogFit, SlopeFit } from './fit.js';
import { Frame, padDomain, plotArea, polylinePoints, svgDocument, text, xPixel, yPixel } from './svg.js';

export interface LogLogSpec {
  inputCsv: string;
  outputImage: string;
  /** annotate the fitted slope (on by default) */
  annotateSlope?: boolean;
  /** row filter when the CSV carries several estimators */
  estimator?: string;
  /** row filter when the CSV carries several grid sizes */
  n?: number;
}

export interface LogLogResult {
  fit: SlopeFit;
  points: Array<[number, number]>;
  svg: string;
}

/**
 * Log-log scatter of squared error against scale separation, with the
 * least-squares line. Consumes the results/loglog CSV schema (columns
 * epsilon and mse, optionally estimator for filtering).
 */
export function renderLogLog(spec: LogLogSpec): LogLogResult {
  const table = readCsv(spec.inputCsv);
  let rows = table.rows;
  if (table.header.includes('estimator')) {
    const which = spec.estimator ?? 'extqv';
    const col = columnIndex(table, 'estimator');
    rows = rows.filter((row) => row[col] === which);
    if (rows.length === 0) {
      throw new Error(`no '${which}' rows in ${spec.inputCsv}`);
    }
  }
  if (spec.n !== undefined && table.header.includes('n')) {
    const col = columnIndex(table, 'n');
    rows = rows.filter((row) => Number(row[col]) === spec.n);
    if (rows.length === 0) {
      throw new Error(`no rows with n=${spec.n} in ${spec.inputCsv}`);
    }
  }
  const filtered = { ...table, rows };
  const eps = numericColumn(filtered, 'epsilon');
  const mse = numericColumn(filtered, 'mse');
  if (eps.length < 2) {
    throw new Error(`need at least 2 data rows in ${spec.inputCsv}, got ${eps.length}`);
  }
  if (new Set(eps).size !== eps.length) {
    throw new Error(
      `duplicate epsilon values in ${spec.inputCsv}; filter to a single estimator and grid size first`,
    );
  }

  const fit = logLogFit(eps, mse);
  const lx = eps.map(Math.log10);
  const ly = mse.map(Math.log10);
  const frame: Frame = {
    width: 720,
    height: 480,
    margin: { top: 32, right: 28, bottom: 56, left: 72 },
    xDomain: padDomain(lx),
    yDomain: padDomain(ly),
  };

  const body: string[] = [plotArea(frame)];
  // natural-log fit replotted on log10 axes keeps the same slope
  const lineY = (v: number) => (fit.intercept + fit.slope * (v * Math.LN10)) / Math.LN10;
  const [x0, x1] = [Math.min(...lx), Math.max(...lx)];
  body.push(
    `<polyline class="fit-line" fill="none" stroke="#c22" stroke-width="1.5" ` +
      `points="${polylinePoints(frame, [x0, x1], [lineY(x0), lineY(x1)])}"/>`,
  );
  lx.forEach((x, i) => {
    body.push(
      `<circle class="point" cx="${xPixel(frame, x).toFixed(2)}" cy="${yPixel(frame, ly[i]).toFixed(2)}" ` +
        `r="4" fill="#224" />`,
    );
    body.push(
      text(xPixel(frame, x), frame.height - frame.margin.bottom + 18, String(eps[i]), 'text-anchor="middle"'),
    );
    body.push(
      text(frame.margin.left - 8, yPixel(frame, ly[i]) + 4, mse[i].toPrecision(3), 'text-anchor="end"'),
    );
  });
  body.push(
    text(frame.width / 2, frame.height - 14, 'scale separation (log axis)', 'text-anchor="middle"'),
  );
  body.push(
    text(16, frame.margin.top - 10, 'squared error of the extrema statistic (log axis)'),
  );
  if (spec.annotateSlope ?? true) {
    body.push(
      text(
        frame.margin.left + 12,
        frame.margin.top + 18,
        `slope = ${fit.slope.toFixed(3)}`,
        'class="slope-label" font-weight="bold"',
      ),
    );
  }

  const svg = svgDocument(frame, body, {
    'data-slope': String(fit.slope),
    'data-intercept': String(fit.intercept),
    'data-r2': String(fit.r2),
  });
  writeFileSync(spec.outputImage, svg);
  return { fit, points: eps.map((e, i) => [e, mse[i]] as [number, number]), svg };
}
