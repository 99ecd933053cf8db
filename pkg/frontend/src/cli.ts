import { pathToFileURL } from 'url';

import { renderLogLog } from './loglog.js';
import { renderExtremalOverlay } from './overlay.js';

function parseFlags(argv: string[]): Map<string, string | boolean> {
  const flags = new Map<string, string | boolean>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith('--')) {
      throw new Error(`unexpected argument '${arg}'`);
    }
    const name = arg.slice(2);
    if (name === 'no-slope') {
      flags.set(name, true);
    } else {
      const value = argv[++i];
      if (value === undefined) {
        throw new Error(`flag --${name} needs a value`);
      }
      flags.set(name, value);
    }
  }
  return flags;
}

function required(flags: Map<string, string | boolean>, name: string): string {
  const value = flags.get(name);
  if (typeof value !== 'string') {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

export function run(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    if (command === 'loglog') {
      const flags = parseFlags(rest);
      const nFilter = flags.get('n');
      const result = renderLogLog({
        inputCsv: required(flags, 'input'),
        outputImage: required(flags, 'output'),
        annotateSlope: !flags.get('no-slope'),
        estimator: flags.get('estimator') as string | undefined,
        n: typeof nFilter === 'string' ? Number(nFilter) : undefined,
      });
      console.log(`${required(flags, 'output')} slope=${result.fit.slope}`);
      return 0;
    }
    if (command === 'overlay') {
      const flags = parseFlags(rest);
      const result = renderExtremalOverlay({
        inputCsv: required(flags, 'input'),
        outputImage: required(flags, 'output'),
      });
      console.log(
        `${required(flags, 'output')} vertices=${result.vertexCount} extremal=${result.extremalCount}`,
      );
      return 0;
    }
    console.error(
      'usage: cli.js <loglog|overlay> --input <csv> --output <svg> [--estimator NAME] [--n SIZE] [--no-slope]',
    );
    return 1;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(run(process.argv.slice(2)));
}
