/** Course-of-action grid: pure cell model plus DOM rendering. */

import type { CoaEntry, CoaMatrix } from './types.js';

export interface CoaGridModel {
  phases: string[];
  actions: string[];
  /** `${phase}/${action}` -> entries (empty cells absent) */
  cells: Map<string, CoaEntry[]>;
}

export function cellKey(phase: string, action: string): string {
  return `${phase}/${action}`;
}

export function buildCoaGrid(matrix: CoaMatrix): CoaGridModel {
  const cells = new Map<string, CoaEntry[]>();
  for (const cell of matrix.cells) {
    cells.set(cellKey(cell.phase, cell.action), cell.entries);
  }
  return { phases: matrix.phases, actions: matrix.actions, cells };
}

export function entryCount(model: CoaGridModel): number {
  let total = 0;
  for (const entries of model.cells.values()) {
    total += entries.length;
  }
  return total;
}

function titleCase(shorthand: string): string {
  return shorthand
    .split('-')
    .map((w, i) => (i > 0 && (w === 'and' || w === 'on') ? w : w[0].toUpperCase() + w.slice(1)))
    .join(' ');
}

export function renderCoa(container: HTMLElement, matrix: CoaMatrix | null): void {
  container.replaceChildren();
  if (!matrix) {
    const empty = document.createElement('p');
    empty.className = 'muted';
    empty.textContent = 'open a case to compute its course-of-action matrix';
    container.append(empty);
    return;
  }
  const model = buildCoaGrid(matrix);
  const table = document.createElement('table');
  table.className = 'coa';

  const head = table.createTHead().insertRow();
  head.append(th('Phase'));
  for (const action of model.actions) {
    head.append(th(titleCase(action)));
  }

  const body = table.createTBody();
  for (const phase of model.phases) {
    const row = body.insertRow();
    row.append(th(titleCase(phase)));
    for (const action of model.actions) {
      const cell = row.insertCell();
      cell.className = 'coa-cell';
      for (const entry of model.cells.get(cellKey(phase, action)) ?? []) {
        const chip = document.createElement('span');
        chip.className = 'coa-entry';
        chip.textContent = entry.name;
        // provenance surfaces on hover
        chip.title = `from ${entry.provenance.join(', ')}`;
        cell.append(chip);
      }
    }
  }
  container.append(table);
}

function th(text: string): HTMLTableCellElement {
  const cell = document.createElement('th');
  cell.textContent = text;
  return cell;
}
